#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <miwg/coil.hpp>
#include <miwg/errors.hpp>
#include <miwg/network.hpp>

namespace miwg {

struct SearchInitial {
    double q_factor = 8.0;
    double p_t_w = 0.01;
    double radius_m = 0.025;
};

struct SearchSteps {
    double q_step = 4.0;
    double p_step = 0.05;
    double a_step = 0.005;
};

struct SearchMaxima {
    double q_max = 32.0;
    double p_max = 1.0;
    double a_max = 0.05;
};

enum class SearchAxis { quality, power, radius };

// Grid search over (Q, P_t, a) for a uniform array reaching total_depth_m in
// equal steps of interval_m. Nesting is outer-to-inner; the default walks Q
// fastest (cheapest to change), then transmit power, then coil size.
struct SearchSpec {
    double total_depth_m;
    double interval_m;
    double q_step;
    double p_step;
    double a_step;
    double q_max;
    double p_max;
    double a_max;
    SearchInitial initial;
    std::array<SearchAxis, 3> nesting{SearchAxis::radius, SearchAxis::power, SearchAxis::quality};
    bool require_uplink = false;  // optional second gate: uplink ratio >= alpha_threshold

    SearchSpec(double total_depth_m, double interval_m, SearchInitial initial = {},
               SearchSteps steps = {}, SearchMaxima maxima = {})
        : total_depth_m(total_depth_m),
          interval_m(interval_m),
          q_step(steps.q_step),
          p_step(steps.p_step),
          a_step(steps.a_step),
          q_max(maxima.q_max),
          p_max(maxima.p_max),
          a_max(maxima.a_max),
          initial(initial) {
        if (!(total_depth_m > 0.0) || !(interval_m > 0.0))
            throw std::invalid_argument("SearchSpec: depths must be > 0");
        const double k = std::round(total_depth_m / interval_m);
        if (!(k >= 1.0) || std::abs(total_depth_m - k * interval_m) > 1e-9 * total_depth_m)
            throw std::invalid_argument(
                "SearchSpec: total_depth_m must be an integer multiple of interval_m");
        if (!(q_step > 0.0) || !(p_step > 0.0) || !(a_step > 0.0))
            throw std::invalid_argument("SearchSpec: steps must be > 0");
        if (!(initial.q_factor > 0.0) || !(initial.p_t_w > 0.0) || !(initial.radius_m > 0.0))
            throw std::invalid_argument("SearchSpec: initial values must be > 0");
        if (q_max < initial.q_factor || p_max < initial.p_t_w || a_max < initial.radius_m)
            throw std::invalid_argument("SearchSpec: maxima must be >= initial values");
    }

    std::size_t sensor_count() const {
        return static_cast<std::size_t>(std::llround(total_depth_m / interval_m));
    }
};

struct SearchOutcome {
    bool feasible = false;
    double q_factor = 0.0;
    double p_t_w = 0.0;
    double radius_m = 0.0;
    std::size_t iterations = 0;
    std::vector<double> per_sensor_voltages;
    std::vector<bool> overvoltage_flags;
    double min_voltage_v = 0.0;
};

namespace detail {

// start, start+step, ... strictly below max, then max itself. Indexed
// multiplication keeps the grid free of accumulated rounding.
inline std::vector<double> axis_values(double start, double step, double max) {
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double x = start + i * step;
        if (!(x < max - 1e-12)) break;
        values.push_back(x);
    }
    values.push_back(max);
    return values;
}

inline ArrayScenario with_power(const ArrayScenario& base, double p_t_w) {
    return ArrayScenario(ReaderConfig(base.reader.coil, p_t_w), base.sensors,
                         Thresholds{base.v_threshold, base.alpha_threshold, base.v_max},
                         base.medium, base.mutual);
}

} // namespace detail

// Feasible means every sensor's load voltage reaches the power-up threshold;
// overvoltage and uplink margins are reported but do not gate here.
inline std::pair<bool, LinkSolution> feasibility_check(const ArrayScenario& sc,
                                                       const ConwayOptions& opts = {}) {
    LinkSolution sol = solve_exact(sc, opts);
    const bool feasible =
        std::all_of(sol.powered_mask.begin(), sol.powered_mask.end(), [](bool b) { return b; });
    return {feasible, std::move(sol)};
}

// First-feasible grid search. The template scenario supplies the reader
// coil, medium, thresholds, coupling policy, and sensor turn count; depths
// are interval_m, 2 interval_m, ... total_depth_m on the reader axis. On an
// exhausted grid the outcome reports the best-minimum-voltage candidate.
inline SearchOutcome search(const SearchSpec& spec, const ArrayScenario& base,
                            const ConwayOptions& opts = {}) {
    const std::array<std::vector<double>, 3> axes = {
        detail::axis_values(spec.initial.q_factor, spec.q_step, spec.q_max),
        detail::axis_values(spec.initial.p_t_w, spec.p_step, spec.p_max),
        detail::axis_values(spec.initial.radius_m, spec.a_step, spec.a_max)};
    const auto axis_of = [&](SearchAxis a) -> const std::vector<double>& {
        return axes[static_cast<std::size_t>(a)];
    };
    {
        auto perm = spec.nesting;
        std::sort(perm.begin(), perm.end());
        if (perm != std::array<SearchAxis, 3>{SearchAxis::quality, SearchAxis::power,
                                              SearchAxis::radius})
            throw std::invalid_argument("search: nesting must be a permutation of the three axes");
    }

    const int turns = base.sensors.empty() ? 5 : base.sensors[0].coil.turns;
    const std::size_t count = spec.sensor_count();

    SearchOutcome best;
    best.min_voltage_v = -std::numeric_limits<double>::infinity();

    for (double outer : axis_of(spec.nesting[0])) {
        for (double mid : axis_of(spec.nesting[1])) {
            for (double inner : axis_of(spec.nesting[2])) {
                double value[3] = {};
                value[static_cast<std::size_t>(spec.nesting[0])] = outer;
                value[static_cast<std::size_t>(spec.nesting[1])] = mid;
                value[static_cast<std::size_t>(spec.nesting[2])] = inner;
                const double q = value[static_cast<std::size_t>(SearchAxis::quality)];
                const double p = value[static_cast<std::size_t>(SearchAxis::power)];
                const double a = value[static_cast<std::size_t>(SearchAxis::radius)];

                std::vector<NodePlacement> nodes;
                nodes.reserve(count);
                for (std::size_t jn = 1; jn <= count; ++jn)
                    nodes.emplace_back(CoilSpec(a, turns, q),
                                       static_cast<double>(jn) * spec.interval_m);
                const ArrayScenario sc(
                    ReaderConfig(base.reader.coil, p), std::move(nodes),
                    Thresholds{base.v_threshold, base.alpha_threshold, base.v_max}, base.medium,
                    base.mutual);

                auto [ok, sol] = feasibility_check(sc, opts);
                ++best.iterations;
                if (ok && spec.require_uplink)
                    ok = std::all_of(sol.uplink_ratios.begin(), sol.uplink_ratios.end(),
                                     [&](double r) { return r >= sc.alpha_threshold; });

                const double min_v =
                    *std::min_element(sol.load_voltages.begin(), sol.load_voltages.end());
                if (ok || min_v > best.min_voltage_v) {
                    best.feasible = ok;
                    best.q_factor = q;
                    best.p_t_w = p;
                    best.radius_m = a;
                    best.per_sensor_voltages = sol.load_voltages;
                    best.overvoltage_flags = sol.overvoltage_mask;
                    best.min_voltage_v = min_v;
                }
                if (ok) return best;
            }
        }
    }
    return best;
}

struct NearFarEntry {
    std::size_t sensor_index;
    double depth_m;
    double voltage_v;
};

struct NearFarReport {
    std::vector<NearFarEntry> overvoltage;
    double max_voltage_v = 0.0;
    double min_voltage_v = 0.0;
    double ratio_max_min = 1.0;
};

// Spread between the hottest and coldest sensor of a solved scenario, with
// every sensor above the damage cap listed.
inline NearFarReport near_far_report(const LinkSolution& solution, const ArrayScenario& sc) {
    if (solution.load_voltages.size() != sc.sensors.size() || sc.sensors.empty())
        throw std::invalid_argument("near_far_report: solution does not match the scenario");
    NearFarReport report;
    report.max_voltage_v = *std::max_element(solution.load_voltages.begin(),
                                             solution.load_voltages.end());
    report.min_voltage_v = *std::min_element(solution.load_voltages.begin(),
                                             solution.load_voltages.end());
    report.ratio_max_min = report.min_voltage_v > 0.0
                               ? report.max_voltage_v / report.min_voltage_v
                               : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sc.sensors.size(); ++k)
        if (solution.load_voltages[k] > sc.v_max)
            report.overvoltage.push_back({k, sc.sensors[k].depth_m, solution.load_voltages[k]});
    return report;
}

enum class PowerCriterion { all_sensors, deepest_sensor };

struct PowerRequirement {
    double p_min_w = std::numeric_limits<double>::quiet_NaN();
    bool reachable = false;
    std::size_t solves = 0;
};

// Smallest transmit power meeting the criterion, by bisection on the bracket
// [p_min_w, p_max_w]. Every load voltage scales with sqrt(P_t), so the
// powered predicate is monotone in P_t and the bracket check at p_max_w
// decides reachability.
inline PowerRequirement minimal_power(const ArrayScenario& base, double p_min_w, double p_max_w,
                                      PowerCriterion criterion = PowerCriterion::all_sensors,
                                      double rel_tol = 1e-4, const ConwayOptions& opts = {}) {
    if (base.sensors.empty())
        throw std::invalid_argument("minimal_power: scenario has no sensors");
    if (!(p_min_w > 0.0) || !(p_max_w >= p_min_w))
        throw std::invalid_argument("minimal_power: need 0 < p_min_w <= p_max_w");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("minimal_power: rel_tol must be > 0");

    PowerRequirement req;
    const auto powered = [&](double p) {
        const LinkSolution sol = solve_exact(detail::with_power(base, p), opts);
        ++req.solves;
        if (criterion == PowerCriterion::deepest_sensor) return sol.powered_mask.back();
        return std::all_of(sol.powered_mask.begin(), sol.powered_mask.end(),
                           [](bool b) { return b; });
    };

    if (!powered(p_max_w)) return req;
    req.reachable = true;
    if (powered(p_min_w)) {
        req.p_min_w = p_min_w;
        return req;
    }
    double lo = p_min_w, hi = p_max_w;
    while (hi - lo > rel_tol * hi) {
        const double midp = 0.5 * (lo + hi);
        (powered(midp) ? hi : lo) = midp;
    }
    req.p_min_w = hi;
    return req;
}

} // namespace miwg
