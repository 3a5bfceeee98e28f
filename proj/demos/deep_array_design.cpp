// A 1.2 m relay array end to end: exact network solution, chain-decay
// comparison, near-far diagnostics, the minimal transmit power for the
// deepest node, and a grid search for a feasible build. A deliberately
// relaxed power-up threshold keeps the deep nodes in play; the calibrated
// default would put them all below threshold.

#include <cstdio>
#include <vector>

#include <miwg/miwg.hpp>

int main() {
    const miwg::MediumConstants medium;
    const miwg::ReaderConfig reader{miwg::CoilSpec(0.04, 5, 8.0), 1.0};
    const miwg::CoilSpec sensor(0.05, 5, 32.0);
    const miwg::Thresholds thresholds{0.5, miwg::default_alpha_threshold(), 20.0};

    std::vector<miwg::NodePlacement> nodes;
    for (std::size_t k = 1; k <= 8; ++k)
        nodes.emplace_back(sensor, 0.15 * static_cast<double>(k));
    const miwg::ArrayScenario sc(reader, std::move(nodes), thresholds, medium);

    const miwg::LinkSolution exact = miwg::solve_exact(sc);
    const miwg::LinkSolution chain = miwg::chain_solution(sc);
    std::printf("8 relays at 0.15 m, reader at %g W, power-up threshold %g V\n\n",
                reader.transmit_power_w, thresholds.v_threshold);
    std::printf("%8s %12s %12s %12s %9s %6s\n", "d (m)", "v exact (V)", "v chain (V)", "alpha",
                "powered", "hot");
    for (std::size_t k = 0; k < sc.sensors.size(); ++k)
        std::printf("%8g %12.5g %12.5g %12.3e %9s %6s\n", sc.sensors[k].depth_m,
                    exact.load_voltages[k], chain.load_voltages[k], exact.uplink_ratios[k],
                    exact.powered_mask[k] ? "yes" : "no",
                    exact.overvoltage_mask[k] ? "yes" : "no");
    std::printf("\nconservation residual %.2e, condition estimate %.2e\n",
                miwg::conservation_residual(exact, sc), exact.condition_estimate);

    const miwg::ChainParams params = miwg::chain_params(sc);
    std::printf("decay per hop: exact |beta| %.5g, first-order %.5g\n", std::abs(params.beta),
                miwg::beta_approx(sensor, 0.15));
    const auto spacing = miwg::optimal_interval(sensor, 0.5);
    std::printf("interval for |beta| = 0.5: %.5g m%s\n", spacing.interval_m,
                spacing.low_q ? " (low-Q regime, treat as indicative)" : "");

    const miwg::NearFarReport report = miwg::near_far_report(exact, sc);
    std::printf("near-far spread: max %.5g V / min %.5g V (ratio %.3g), %zu above the %g V cap\n",
                report.max_voltage_v, report.min_voltage_v, report.ratio_max_min,
                report.overvoltage.size(), thresholds.v_max);

    const miwg::PowerRequirement need =
        miwg::minimal_power(sc, 0.01, 1.0, miwg::PowerCriterion::deepest_sensor);
    if (need.reachable)
        std::printf("deepest node powered from %.5g W (%zu solves)\n", need.p_min_w, need.solves);
    else
        std::printf("deepest node not reachable within 1 W\n");

    // Search for the cheapest (Q, P_t, a) build covering 0.6 m at the same
    // threshold, walking quality fastest from the default initial point.
    const miwg::SearchSpec spec(0.6, 0.15);
    const miwg::ArrayScenario base(miwg::ReaderConfig(reader.coil, 0.01), {}, thresholds,
                                   medium);
    const miwg::SearchOutcome outcome = miwg::search(spec, base);
    if (outcome.feasible)
        std::printf("0.6 m build: feasible at Q = %g, P_t = %g W, a = %g m after %zu candidates\n",
                    outcome.q_factor, outcome.p_t_w, outcome.radius_m, outcome.iterations);
    else
        std::printf("0.6 m build: infeasible within maxima; best min voltage %.5g V\n",
                    outcome.min_voltage_v);
    return 0;
}
