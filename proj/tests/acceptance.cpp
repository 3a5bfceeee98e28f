// Acceptance gate. Each criterion prints one [PASS]/[FAIL] line with a
// measured detail and its runtime; the process exit status is the number of
// failed criteria, so the suite stays honest about known gaps instead of
// hiding them. Criteria with a runtime budget fail when they exceed it.
//
// The CLI binary under test is injected at compile time as MIWG_CLI_PATH.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <filesystem>

#include <miwg/miwg.hpp>

namespace {

namespace fs = std::filesystem;

struct Outcome {
    bool pass;
    std::string detail;
};

double rel(double actual, double reference) {
    return std::abs(actual - reference) / std::abs(reference);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string fmt_e(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

const miwg::ReaderConfig& reference_reader() {
    static const miwg::ReaderConfig reader{miwg::CoilSpec(0.04, 5, 8.0), 0.01};
    return reader;
}

miwg::MutualPolicy dipole_policy() {
    miwg::MutualPolicy policy;
    policy.mode = miwg::MutualMode::dipole;
    return policy;
}

// 1. The exact solver restricted to one sensor must reproduce the closed
// forms: the distance-explicit load voltage and detectability ratio under
// the far-spacing coupling model, and the mutual-explicit voltage under the
// automatically selected coupling model.
Outcome single_link_parity() {
    std::mt19937 rng(20260817u);
    std::uniform_real_distribution<double> radius(0.01, 0.06);
    std::uniform_int_distribution<int> turns(3, 8);
    std::uniform_real_distribution<double> quality(4.0, 40.0);
    std::uniform_real_distribution<double> power(0.001, 1.0);
    std::uniform_real_distribution<double> distance(0.03, 0.5);
    const miwg::Thresholds th = miwg::default_thresholds();

    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a1 = radius(rng);
        const int n1 = turns(rng);
        const double q1 = quality(rng);
        const double a2 = radius(rng);
        const int n2 = turns(rng);
        const double q2 = quality(rng);
        const double p_t = power(rng);
        const double d = distance(rng);

        const miwg::ReaderConfig reader{miwg::CoilSpec(a1, n1, q1), p_t};
        const miwg::CoilSpec sensor(a2, n2, q2);

        const miwg::ArrayScenario far(reader, {miwg::NodePlacement(sensor, d)}, th, {},
                                      dipole_policy());
        const miwg::LinkSolution sol_far = miwg::solve_exact(far);
        worst = std::max(worst, rel(sol_far.load_voltages[0],
                                    miwg::single_sensor_voltage(reader, sensor, d)));
        worst = std::max(worst, rel(sol_far.uplink_ratios[0],
                                    miwg::uplink_ratio_single(reader, sensor, d)));

        const miwg::ArrayScenario autod(reader, {miwg::NodePlacement(sensor, d)}, th, {}, {});
        const miwg::LinkSolution sol_auto = miwg::solve_exact(autod);
        const double m = miwg::mutual_auto(reader.coil, sensor, miwg::RelativePose(d));
        worst = std::max(worst, rel(sol_auto.load_voltages[0],
                                    miwg::single_sensor_voltage_from_mutual(reader, sensor, m)));
    }
    return {worst < 1e-9,
            "worst relative deviation " + fmt_e(worst) + " over 100 random configs (limit 1e-9)"};
}

// 2. Integral coupling model against the far-spacing model for coaxial
// identical coils: agreement within 1% at an axial gap of 10 radii and
// within 0.1% at 25 radii. The integral model carries the finite coil size,
// so its deviation at 10a is a property of the geometry, not a tolerance
// knob; measured values are reported either way.
Outcome far_field_agreement() {
    double worst10 = 0.0, worst25 = 0.0;
    for (double a : {0.01, 0.025, 0.05}) {
        const miwg::CoilSpec coil(a, 5, 8.0);
        for (double factor : {10.0, 25.0}) {
            const double d = factor * a;
            const double mi = miwg::mutual_conway(coil, coil, miwg::RelativePose(d));
            const double md = miwg::mutual_dipole(coil, coil, d);
            const double dev = std::abs(mi - md) / md;
            (factor == 10.0 ? worst10 : worst25) = std::max(factor == 10.0 ? worst10 : worst25,
                                                            dev);
        }
    }
    const bool pass = worst10 < 0.01 && worst25 < 0.001;
    return {pass, "deviation " + fmt_e(worst10) + " at 10a (limit 1e-2) and " + fmt_e(worst25) +
                      " at 25a (limit 1e-3)"};
}

// 3. With the power-up threshold calibrated so the default coil pair reaches
// 6 cm at Q = 8, the downlink range must grow strictly with the quality
// factor and land between 9 and 13 cm at Q = 32.
Outcome downlink_range_growth() {
    const double v_th = miwg::default_v_threshold();
    const std::vector<double> q_grid = {8.0, 16.0, 24.0, 32.0};
    const std::vector<double> frozen = {0.059869225957891486, 0.07543049802526003,
                                        0.08634636541240613, 0.09503647226607878};
    std::vector<double> ranges;
    for (double q : q_grid)
        ranges.push_back(miwg::max_downlink_range(reference_reader(), miwg::CoilSpec(0.025, 5, q),
                                                  v_th));
    bool pass = true;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (rel(ranges[i], frozen[i]) > 1e-9) pass = false;
        if (i > 0 && !(ranges[i] > ranges[i - 1])) pass = false;
    }
    if (!(ranges.back() >= 0.09 && ranges.back() <= 0.13)) pass = false;
    return {pass, "ranges " + fmt(ranges[0]) + " / " + fmt(ranges[1]) + " / " + fmt(ranges[2]) +
                      " / " + fmt(ranges[3]) + " m over Q {8,16,24,32}"};
}

// 4. A 10-sensor array spaced at c a Q^(1/3): for every tested c >= 1.3 the
// deepest-sensor voltages across the quality grid stay within 10% of their
// mean, and the spread shrinks monotonically as c grows.
Outcome interval_scaling_equalizes() {
    miwg::IntervalSweepSpec spec{reference_reader(),
                                 miwg::CoilSpec(0.025, 5, 8.0),
                                 {8.0, 16.0, 24.0, 32.0},
                                 {1.3, 1.4, 1.5, 1.6},
                                 10,
                                 miwg::default_thresholds(),
                                 {},
                                 {}};
    const auto result = miwg::interval_sweep(spec);
    const std::vector<double> frozen = {0.08394426187872835, 0.037758213946043284,
                                        0.012983024561671252, 0.0038988452788542706};

    bool pass = true;
    double worst_frac = 0.0;
    for (std::size_t ic = 0; ic < spec.spacing_coefficients.size(); ++ic) {
        double mean = 0.0;
        for (std::size_t iq = 0; iq < spec.q_factors.size(); ++iq)
            mean += result.rows[ic * spec.q_factors.size() + iq].deepest_v_load_v;
        mean /= static_cast<double>(spec.q_factors.size());
        for (std::size_t iq = 0; iq < spec.q_factors.size(); ++iq) {
            const double v = result.rows[ic * spec.q_factors.size() + iq].deepest_v_load_v;
            worst_frac = std::max(worst_frac, std::abs(v - mean) / mean);
        }
        if (rel(result.spreads[ic].relative_spread, frozen[ic]) > 1e-5) pass = false;
        if (ic > 0 &&
            !(result.spreads[ic].relative_spread < result.spreads[ic - 1].relative_spread))
            pass = false;
    }
    if (!(worst_frac <= 0.10)) pass = false;
    return {pass, "worst |v - mean| / mean " + fmt(worst_frac) + " (limit 0.1); spreads " +
                      fmt(result.spreads[0].relative_spread) + " down to " +
                      fmt(result.spreads[3].relative_spread) + " over c in [1.3, 1.6]"};
}

// 5. Minimal transmit power for an 0.8 m target at spacing 0.8 a Q^(1/3):
// non-increasing over the quality grid, every value inside the [0.01, 1] W
// bracket or flagged unreachable, and reachability itself monotone in Q.
// Run once at the calibrated threshold (nothing reachable at these coil
// sizes) and once at a relaxed 0.02 V threshold that exercises the
// bisection, the bracket floor, and an unreachable low-Q row.
Outcome minimal_power_trend() {
    miwg::PowerRequirementSpec spec{reference_reader(),
                                    miwg::CoilSpec(0.025, 5, 8.0),
                                    {8.0, 16.0, 24.0, 32.0},
                                    0.8,
                                    0.8,
                                    0.01,
                                    1.0,
                                    miwg::PowerCriterion::deepest_sensor,
                                    1e-4,
                                    miwg::default_thresholds(),
                                    {},
                                    {}};
    bool pass = true;

    const auto check_rows = [&pass](const std::vector<miwg::PowerRequirementRow>& rows) {
        double prev = std::numeric_limits<double>::infinity();
        bool seen_reachable = false;
        for (const auto& row : rows) {
            if (!row.reachable) {
                if (seen_reachable) pass = false;  // reachability must not flip back off
                continue;
            }
            seen_reachable = true;
            if (!(row.p_min_w >= 0.01 && row.p_min_w <= 1.0)) pass = false;
            if (!(row.p_min_w <= prev * (1.0 + 1e-12))) pass = false;
            prev = row.p_min_w;
        }
    };

    const auto calibrated = miwg::power_requirement(spec);
    check_rows(calibrated);
    for (const auto& row : calibrated)
        if (row.reachable) pass = false;  // 4.8 V power-up exceeds reach of these coils

    spec.thresholds.v_threshold = 0.02;
    const auto relaxed = miwg::power_requirement(spec);
    check_rows(relaxed);
    if (relaxed[0].reachable) pass = false;
    if (!(relaxed[1].reachable && relaxed[1].p_min_w > 0.0766 && relaxed[1].p_min_w < 0.0768))
        pass = false;
    if (!(relaxed[2].reachable && relaxed[2].p_min_w == 0.01)) pass = false;
    if (!(relaxed[3].reachable && relaxed[3].p_min_w == 0.01)) pass = false;

    std::string detail = "calibrated threshold: all unreachable; 0.02 V threshold: ";
    for (std::size_t i = 0; i < relaxed.size(); ++i)
        detail += (i ? " / " : "") +
                  (relaxed[i].reachable ? fmt(relaxed[i].p_min_w) + " W" : std::string("unreachable"));
    return {pass, detail};
}

// 6. Grid search for a 1.2 m array at 0.15 m spacing from the default
// initial point, steps, and maxima, judged at the calibrated power-up
// threshold. The target outcome is feasibility at the strongest corner
// (Q = 32, 1 W, 0.05 m radius) confirmed by the exact solver.
Outcome deep_search_feasibility() {
    const miwg::SearchSpec spec(1.2, 0.15);
    const miwg::ArrayScenario base(reference_reader(), {}, miwg::default_thresholds(), {}, {});
    const auto outcome = miwg::search(spec, base);

    bool pass = outcome.feasible && outcome.q_factor == 32.0 && outcome.p_t_w == 1.0 &&
                outcome.radius_m == 0.05;
    if (pass) {
        std::vector<miwg::NodePlacement> nodes;
        for (std::size_t k = 1; k <= 8; ++k)
            nodes.emplace_back(miwg::CoilSpec(outcome.radius_m, 5, outcome.q_factor),
                               0.15 * static_cast<double>(k));
        const miwg::ArrayScenario winner(
            miwg::ReaderConfig(base.reader.coil, outcome.p_t_w), std::move(nodes),
            miwg::Thresholds{base.v_threshold, base.alpha_threshold, base.v_max}, base.medium,
            base.mutual);
        pass = miwg::feasibility_check(winner).first;
    }

    std::string detail;
    if (outcome.feasible) {
        detail = "feasible at (Q=" + fmt(outcome.q_factor) + ", " + fmt(outcome.p_t_w) + " W, " +
                 fmt(outcome.radius_m) + " m) after " + std::to_string(outcome.iterations) +
                 " candidates";
    } else {
        detail = "search exhausted " + std::to_string(outcome.iterations) +
                 " candidates; best (Q=" + fmt(outcome.q_factor) + ", " + fmt(outcome.p_t_w) +
                 " W, " + fmt(outcome.radius_m) + " m) leaves min voltage " +
                 fmt(outcome.min_voltage_v) + " V below the " + fmt(base.v_threshold) +
                 " V power-up threshold";
        // Cross-checks of the exhausted-search report itself; a mismatch
        // here means the search walked a different grid than intended.
        if (outcome.iterations != 882 || outcome.q_factor != 32.0 || outcome.p_t_w != 1.0 ||
            outcome.radius_m != 0.05 || rel(outcome.min_voltage_v, 0.6527867) > 1e-4)
            detail += " [grid walk deviates from the expected 882-candidate trace]";
    }
    return {pass, detail};
}

// 7. In-array uplink advantage: at depths of 0.6 m and beyond the array
// detectability ratio exceeds what the same sensor would provide alone, and
// both sequences fall strictly with depth.
Outcome uplink_advantage() {
    miwg::UplinkCompareSpec spec{reference_reader(), miwg::CoilSpec(0.05, 5, 32.0), 8, 0.15,
                                 miwg::default_thresholds(),
                                 {},
                                 {}};
    const auto rows = miwg::uplink_compare(spec);
    bool pass = rows.size() == 8;
    for (std::size_t k = 0; pass && k < rows.size(); ++k) {
        if (k > 0 && !(rows[k].alpha_single < rows[k - 1].alpha_single)) pass = false;
        if (k > 0 && !(rows[k].alpha_array < rows[k - 1].alpha_array)) pass = false;
        if (rows[k].depth_m >= 0.6 - 1e-12 && !(rows[k].alpha_array > rows[k].alpha_single))
            pass = false;
    }
    const auto& deep = rows.back();
    return {pass, "deepest sensor (" + fmt(deep.depth_m) + " m): array " +
                      fmt_e(deep.alpha_array) + " vs standalone " + fmt_e(deep.alpha_single)};
}

// 8. Power conservation on a battery of representative scenarios: the real
// power fed by the source equals the sum dissipated in the sensor tanks,
// within 1e-8 of the apparent drive power. Checked both inline and through
// the library's own residual.
Outcome power_conservation() {
    const miwg::Thresholds th = miwg::default_thresholds();
    const miwg::CoilSpec small(0.025, 5, 8.0);
    const miwg::CoilSpec deep(0.05, 5, 32.0);

    std::vector<miwg::ArrayScenario> battery;
    battery.emplace_back(miwg::ReaderConfig(reference_reader().coil, 1.0),
                         std::vector<miwg::NodePlacement>{miwg::NodePlacement(small, 0.05)}, th,
                         miwg::MediumConstants{}, miwg::MutualPolicy{});
    battery.emplace_back(miwg::ReaderConfig(reference_reader().coil, 0.01),
                         std::vector<miwg::NodePlacement>{miwg::NodePlacement(small, 0.3)}, th,
                         miwg::MediumConstants{}, dipole_policy());
    std::vector<miwg::NodePlacement> chain;
    for (std::size_t k = 1; k <= 8; ++k)
        chain.emplace_back(deep, 0.15 * static_cast<double>(k));
    battery.emplace_back(miwg::ReaderConfig(reference_reader().coil, 1.0), chain, th,
                         miwg::MediumConstants{}, miwg::MutualPolicy{});
    battery.emplace_back(miwg::ReaderConfig(reference_reader().coil, 1.0), chain, th,
                         miwg::MediumConstants{}, dipole_policy());
    battery.emplace_back(
        miwg::ReaderConfig(reference_reader().coil, 1.0),
        std::vector<miwg::NodePlacement>{miwg::NodePlacement(small, 0.1),
                                         miwg::NodePlacement(miwg::CoilSpec(0.04, 5, 16.0), 0.22,
                                                             0.03),
                                         miwg::NodePlacement(deep, 0.4, 0.01)},
        th, miwg::MediumConstants{}, miwg::MutualPolicy{});

    bool pass = true;
    double worst = 0.0;
    for (const auto& sc : battery) {
        const miwg::LinkSolution sol = miwg::solve_exact(sc);
        const std::complex<double> apparent =
            sol.drive_voltage_v * std::conj(sol.currents[0]);
        double dissipated = 0.0;
        for (std::size_t p = 0; p < sc.sensors.size(); ++p)
            dissipated += std::real(miwg::loop_impedance(sc.sensors[p].coil, sc.medium)) *
                          std::norm(sol.currents[p + 1]);
        const double inline_res = std::abs(std::real(apparent) - dissipated) /
                                  std::abs(std::real(apparent));
        const double lib_res = miwg::conservation_residual(sol, sc);
        worst = std::max({worst, inline_res, lib_res});
        if (!(inline_res < 1e-8 && lib_res < 1e-8)) pass = false;
    }
    return {pass, "worst residual " + fmt_e(worst) + " over a 5-scenario battery (limit 1e-8)"};
}

// 9. Chain-decay validation in the weak-coupling regime. Mid-chain current
// ratios of 8-sensor arrays spaced at the beta = 0.5 design interval must
// track the first-order decay magnitude within 15% (tripwired at the
// measured deviations), and on random weak configs the exact decay root must
// match the first-order magnitude within its second-order Taylor error.
Outcome chain_decay_validation() {
    const std::vector<miwg::CoilSpec> variants = {
        miwg::CoilSpec(0.025, 5, 8.0), miwg::CoilSpec(0.025, 5, 16.0),
        miwg::CoilSpec(0.04, 5, 32.0), miwg::CoilSpec(0.05, 5, 32.0)};
    const std::vector<double> frozen_dev = {-0.022952, -0.016454, -0.020948, -0.020948};
    const miwg::Thresholds th = miwg::default_thresholds();

    bool pass = true;
    std::string devs;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto& coil = variants[i];
        const double interval = miwg::optimal_interval(coil, 0.5).interval_m;
        std::vector<miwg::NodePlacement> nodes;
        for (std::size_t k = 1; k <= 8; ++k)
            nodes.emplace_back(coil, interval * static_cast<double>(k));
        const miwg::ArrayScenario sc(reference_reader(), std::move(nodes), th, {},
                                     dipole_policy());
        const miwg::LinkSolution sol = miwg::solve_exact(sc);
        // Sensor p = 5 is mid-chain: currents[0] is the reader, so the ratio
        // below sensor 5 is currents[6] / currents[5].
        const double ratio = std::abs(sol.currents[6]) / std::abs(sol.currents[5]);
        const double dev = ratio / miwg::beta_approx(coil, interval) - 1.0;
        if (!(std::abs(dev) <= 0.15)) pass = false;
        if (!(std::abs(dev - frozen_dev[i]) < 5e-3)) pass = false;
        devs += (i ? " / " : "") + fmt(dev);
    }

    std::mt19937 rng(9u);
    std::uniform_real_distribution<double> radius(0.01, 0.05);
    std::uniform_real_distribution<double> quality(4.0, 40.0);
    std::uniform_real_distribution<double> spacing_ratio(3.0, 12.0);
    const int turn_choices[3] = {3, 5, 8};
    std::uniform_int_distribution<int> turn_index(0, 2);
    double worst_excess = 0.0;
    for (int k = 0; k < 100; ++k) {
        double a, q, d, beta_ap;
        int n;
        do {
            a = radius(rng);
            n = turn_choices[turn_index(rng)];
            q = quality(rng);
            d = spacing_ratio(rng) * a;
            beta_ap = miwg::beta_approx(miwg::CoilSpec(a, n, q), d);
        } while (beta_ap > 0.2);
        const miwg::CoilSpec coil(a, n, q);
        const double m = miwg::mutual_dipole(coil, coil, d);
        const std::complex<double> beta = miwg::beta_exact(miwg::loop_impedance(coil), m);
        const double err = std::abs(std::abs(beta) / beta_ap - 1.0);
        const double bound = 2.0 * beta_ap * beta_ap + 1e-9;
        worst_excess = std::max(worst_excess, err / bound);
        if (!(err <= bound)) pass = false;
    }
    return {pass, "mid-chain deviations " + devs +
                      " vs the first-order decay magnitude; worst Taylor-bound fraction " +
                      fmt(worst_excess) + " over 100 weak configs"};
}

// 10. CLI determinism and exit codes: every subcommand run twice on the same
// config writes byte-identical data, headers match the documented schema,
// a config with an unknown key exits 2, and an infeasible design under
// --require-feasible exits 4.
Outcome cli_determinism() {
    const fs::path dir = "acceptance_tmp";
    fs::create_directories(dir);

    const auto write_file = [&](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
        return (dir / name).string();
    };
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const auto run = [&](const std::string& args) {
        const std::string cmd =
            std::string("\"") + MIWG_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        if (rc == -1) return -1;
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
    };

    const std::string sr = write_file("single_range.json",
                                      "{\"mutual\": {\"policy\": \"dipole\"},\n"
                                      " \"sweep\": {\"q_factors\": [8], \"distances\": [0.05, 0.1]}}\n");
    const std::string is = write_file("interval_sweep.json",
                                      "{\"mutual\": {\"policy\": \"dipole\"},\n"
                                      " \"sweep\": {\"q_factors\": [8, 16], \"coefficients\": [1.4],"
                                      " \"sensor_count\": 3}}\n");
    const std::string pr = write_file("power_requirement.json",
                                      "{\"thresholds\": {\"v_threshold_v\": 0.02},\n"
                                      " \"sweep\": {\"q_factors\": [24]}}\n");
    const std::string uc = write_file("uplink_compare.json",
                                      "{\"sweep\": {\"sensor_count\": 3, \"interval_m\": 0.15}}\n");
    const std::string design_ok = write_file(
        "design_ok.json",
        "{\"mutual\": {\"policy\": \"dipole\"},\n"
        " \"search\": {\"total_depth_m\": 0.05, \"interval_m\": 0.05,\n"
        "             \"max\": {\"q_factor\": 8, \"p_t_w\": 0.01, \"radius_m\": 0.025}}}\n");
    const std::string design_red = write_file(
        "design_infeasible.json",
        "{\"mutual\": {\"policy\": \"dipole\"},\n"
        " \"search\": {\"total_depth_m\": 0.4, \"interval_m\": 0.4,\n"
        "             \"max\": {\"q_factor\": 8, \"p_t_w\": 0.01, \"radius_m\": 0.025}}}\n");
    const std::string bad = write_file("bad.json", "{\"sweeps\": {}}\n");

    bool pass = true;
    std::string note;
    const auto fail = [&](const std::string& what) {
        pass = false;
        if (note.empty()) note = what;
    };

    struct Pair {
        const char* label;
        std::string args;        // subcommand + config + format flags
        int expected_exit;
        const char* first_line;  // nullptr: only check non-empty equality
    };
    const std::vector<Pair> pairs = {
        {"single-range csv", "single-range --config " + sr, 0,
         "q_factor,distance_m,v_load_v,alpha,powered,limit"},
        {"single-range json", "single-range --config " + sr + " --format json", 0, nullptr},
        {"interval-sweep", "interval-sweep --config " + is, 0,
         "coefficient,q_factor,interval_m,deepest_v_load_v"},
        {"power-requirement", "power-requirement --config " + pr, 0,
         "q_factor,interval_m,sensor_count,p_min_w,reachable,solves"},
        {"uplink-compare", "uplink-compare --config " + uc, 0,
         "sensor_index,depth_m,alpha_single,alpha_array,detectable_single,detectable_array"},
        {"design feasible", "design --config " + design_ok + " --require-feasible", 0,
         "feasible,q_factor,p_t_w,radius_m,iterations,min_voltage_v"},
        {"design infeasible", "design --config " + design_red + " --require-feasible", 4,
         "feasible,q_factor,p_t_w,radius_m,iterations,min_voltage_v"},
        {"defaults", "defaults", 0, nullptr},
    };

    int idx = 0;
    for (const auto& pc : pairs) {
        const std::string out_a = (dir / ("out_" + std::to_string(idx) + "_a")).string();
        const std::string out_b = (dir / ("out_" + std::to_string(idx) + "_b")).string();
        ++idx;
        const int ea = run(pc.args + " --out " + out_a);
        const int eb = run(pc.args + " --out " + out_b);
        const std::string ca = slurp(out_a);
        const std::string cb = slurp(out_b);
        if (ea != pc.expected_exit || eb != pc.expected_exit)
            fail(std::string(pc.label) + ": exit " + std::to_string(ea) + "/" +
                 std::to_string(eb) + ", expected " + std::to_string(pc.expected_exit));
        else if (ca.empty() || ca != cb)
            fail(std::string(pc.label) + ": reruns differ or output empty");
        else if (pc.first_line != nullptr &&
                 ca.substr(0, ca.find('\n')) != pc.first_line)
            fail(std::string(pc.label) + ": unexpected header \"" +
                 ca.substr(0, ca.find('\n')) + "\"");
    }

    const int bad_exit = run("single-range --config " + bad);
    if (bad_exit != 2) fail("unknown config key: exit " + std::to_string(bad_exit) +
                            ", expected 2");

    return {pass, pass ? std::to_string(pairs.size()) +
                             " subcommand reruns byte-identical; config rejection exits 2"
                       : note};
}

struct Criterion {
    const char* name;
    long limit_ms;  // 0: no budget
    std::function<Outcome()> fn;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"single-sensor closed-form parity", 1000, single_link_parity},
        {"integral-vs-dipole far-field agreement", 10000, far_field_agreement},
        {"calibrated downlink range growth", 1000, downlink_range_growth},
        {"interval scaling equalizes deepest voltages", 30000, interval_scaling_equalizes},
        {"minimal transmit power trend", 60000, minimal_power_trend},
        {"deep-array grid search feasibility", 60000, deep_search_feasibility},
        {"in-array uplink advantage at depth", 10000, uplink_advantage},
        {"drive power matches tank dissipation", 0, power_conservation},
        {"chain decay model vs exact solver", 0, chain_decay_validation},
        {"CLI determinism and exit codes", 0, cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Outcome outcome{false, ""};
        const auto start = std::chrono::steady_clock::now();
        try {
            outcome = c.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected exception: ") + e.what()};
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        std::string budget;
        if (c.limit_ms > 0) {
            budget = ", budget " + std::to_string(c.limit_ms) + " ms";
            if (elapsed > c.limit_ms) {
                outcome.pass = false;
                outcome.detail += " [exceeded runtime budget]";
            }
        }
        if (!outcome.pass) ++failures;
        std::printf("[%s] %zu. %s: %s (%lld ms%s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    c.name, outcome.detail.c_str(), static_cast<long long>(elapsed),
                    budget.c_str());
    }
    std::printf("acceptance: %zu of %zu criteria passed, %d failed\n",
                criteria.size() - static_cast<std::size_t>(failures), criteria.size(), failures);
    return failures;
}
