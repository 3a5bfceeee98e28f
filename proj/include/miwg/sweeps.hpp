#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <miwg/coil.hpp>
#include <miwg/deployment.hpp>
#include <miwg/errors.hpp>
#include <miwg/network.hpp>

namespace miwg {

// Evenly spaced grid, endpoints included. steps == 1 degenerates to {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t steps) {
    if (steps < 1) throw ConfigError("linspace: steps must be >= 1");
    if (steps == 1) return {start};
    if (!(stop > start)) throw ConfigError("linspace: stop must exceed start");
    std::vector<double> values(steps);
    const double h = (stop - start) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) values[i] = start + static_cast<double>(i) * h;
    values.back() = stop;
    return values;
}

enum class BindingLimit { none, downlink, uplink, both };

inline const char* to_string(BindingLimit limit) {
    switch (limit) {
        case BindingLimit::none: return "none";
        case BindingLimit::downlink: return "downlink";
        case BindingLimit::uplink: return "uplink";
        case BindingLimit::both: return "both";
    }
    throw std::invalid_argument("to_string: unknown BindingLimit");
}

// Single sensor swept over distance for each quality factor: exact-solver
// load voltage and uplink ratio, which constraint binds, plus the
// closed-form voltage for comparison.
struct SingleRangeSpec {
    ReaderConfig reader;
    CoilSpec sensor;  // quality_factor is replaced per q_factors entry
    std::vector<double> q_factors;
    std::vector<double> distances_m;
    Thresholds thresholds;
    MediumConstants medium{};
    MutualPolicy mutual{};
};

struct SingleRangeRow {
    double q_factor;
    double distance_m;
    double v_load_v;
    double alpha;
    bool powered;
    BindingLimit limit;
    double v_closed_form_v;
};

struct SingleRangeMarker {
    double q_factor;
    double d_max_downlink_m;
    double d_max_uplink_m;
};

struct SingleRangeResult {
    std::vector<SingleRangeRow> rows;
    std::vector<SingleRangeMarker> markers;
};

inline SingleRangeResult single_range(const SingleRangeSpec& spec,
                                      const ConwayOptions& opts = {}) {
    if (spec.q_factors.empty()) throw std::invalid_argument("single_range: empty q_factors");
    if (spec.distances_m.empty()) throw std::invalid_argument("single_range: empty distances_m");
    for (std::size_t i = 0; i < spec.distances_m.size(); ++i) {
        if (!(spec.distances_m[i] > 0.0))
            throw std::invalid_argument("single_range: distances must be > 0");
        if (i > 0 && !(spec.distances_m[i] > spec.distances_m[i - 1]))
            throw std::invalid_argument("single_range: distances must be strictly increasing");
    }

    SingleRangeResult result;
    result.rows.reserve(spec.q_factors.size() * spec.distances_m.size());
    for (double q : spec.q_factors) {
        const CoilSpec coil(spec.sensor.radius_m, spec.sensor.turns, q);
        for (double d : spec.distances_m) {
            const ArrayScenario sc(spec.reader, {NodePlacement(coil, d)}, spec.thresholds,
                                   spec.medium, spec.mutual);
            const LinkSolution sol = solve_exact(sc, opts);
            SingleRangeRow row;
            row.q_factor = q;
            row.distance_m = d;
            row.v_load_v = sol.load_voltages[0];
            row.alpha = sol.uplink_ratios[0];
            row.powered = sol.powered_mask[0];
            const bool detectable = row.alpha >= spec.thresholds.alpha_threshold;
            row.limit = row.powered ? (detectable ? BindingLimit::none : BindingLimit::uplink)
                                    : (detectable ? BindingLimit::downlink : BindingLimit::both);
            row.v_closed_form_v = single_sensor_voltage(spec.reader, coil, d, spec.medium);
            result.rows.push_back(row);
        }
        result.markers.push_back(
            {q, max_downlink_range(spec.reader, coil, spec.thresholds.v_threshold, spec.medium),
             max_uplink_range(spec.reader, coil, spec.thresholds.alpha_threshold)});
    }
    return result;
}

// Uniform array at interval c a Q^(1/3) for each coefficient c and quality
// factor: deepest-sensor voltage, with the per-coefficient spread across the
// quality grid summarized as (max - min) / mean.
struct IntervalSweepSpec {
    ReaderConfig reader;
    CoilSpec sensor;  // quality_factor is replaced per q_factors entry
    std::vector<double> q_factors;
    std::vector<double> spacing_coefficients;
    std::size_t sensor_count = 10;
    Thresholds thresholds;
    MediumConstants medium{};
    MutualPolicy mutual{};
};

struct IntervalSweepRow {
    double coefficient;
    double q_factor;
    double interval_m;
    double deepest_v_load_v;
};

struct IntervalSpread {
    double coefficient;
    double relative_spread;  // (max - min) / mean of deepest voltages over the Q grid
};

struct IntervalSweepResult {
    std::vector<IntervalSweepRow> rows;
    std::vector<IntervalSpread> spreads;
};

inline IntervalSweepResult interval_sweep(const IntervalSweepSpec& spec,
                                          const ConwayOptions& opts = {}) {
    if (spec.q_factors.empty()) throw std::invalid_argument("interval_sweep: empty q_factors");
    if (spec.spacing_coefficients.empty())
        throw std::invalid_argument("interval_sweep: empty spacing_coefficients");
    if (spec.sensor_count < 1)
        throw std::invalid_argument("interval_sweep: sensor_count must be >= 1");

    IntervalSweepResult result;
    for (double c : spec.spacing_coefficients) {
        if (!(c > 0.0))
            throw std::invalid_argument("interval_sweep: coefficients must be > 0");
        double vmin = 0.0, vmax = 0.0, vsum = 0.0;
        bool first = true;
        for (double q : spec.q_factors) {
            const CoilSpec coil(spec.sensor.radius_m, spec.sensor.turns, q);
            const double interval = c * coil.radius_m * std::cbrt(q);
            std::vector<NodePlacement> nodes;
            nodes.reserve(spec.sensor_count);
            for (std::size_t j = 1; j <= spec.sensor_count; ++j)
                nodes.emplace_back(coil, static_cast<double>(j) * interval);
            const ArrayScenario sc(spec.reader, std::move(nodes), spec.thresholds, spec.medium,
                                   spec.mutual);
            const LinkSolution sol = solve_exact(sc, opts);
            const double v = sol.load_voltages.back();
            result.rows.push_back({c, q, interval, v});
            vmin = first ? v : std::min(vmin, v);
            vmax = first ? v : std::max(vmax, v);
            vsum += v;
            first = false;
        }
        const double mean = vsum / static_cast<double>(spec.q_factors.size());
        result.spreads.push_back({c, mean > 0.0 ? (vmax - vmin) / mean : 0.0});
    }
    return result;
}

// Minimal transmit power to reach a target depth, per quality factor. The
// interval scales as c a Q^(1/3) and the array is extended until it covers
// the target, so sensor count varies with Q.
struct PowerRequirementSpec {
    ReaderConfig reader;  // transmit_power_w is only a placeholder for the bracket
    CoilSpec sensor;      // quality_factor is replaced per q_factors entry
    std::vector<double> q_factors;
    double target_depth_m;
    double spacing_coefficient = 0.8;
    double p_min_w = 0.01;
    double p_max_w = 1.0;
    PowerCriterion criterion = PowerCriterion::deepest_sensor;
    double rel_tol = 1e-4;
    Thresholds thresholds;
    MediumConstants medium{};
    MutualPolicy mutual{};
};

struct PowerRequirementRow {
    double q_factor;
    double interval_m;
    std::size_t sensor_count;
    double p_min_w;
    bool reachable;
    std::size_t solves;
};

inline std::vector<PowerRequirementRow> power_requirement(const PowerRequirementSpec& spec,
                                                          const ConwayOptions& opts = {}) {
    if (spec.q_factors.empty()) throw std::invalid_argument("power_requirement: empty q_factors");
    if (!(spec.target_depth_m > 0.0))
        throw std::invalid_argument("power_requirement: target_depth_m must be > 0");
    if (!(spec.spacing_coefficient > 0.0))
        throw std::invalid_argument("power_requirement: spacing_coefficient must be > 0");

    std::vector<PowerRequirementRow> rows;
    rows.reserve(spec.q_factors.size());
    for (double q : spec.q_factors) {
        const CoilSpec coil(spec.sensor.radius_m, spec.sensor.turns, q);
        const double interval = spec.spacing_coefficient * coil.radius_m * std::cbrt(q);
        const auto count = static_cast<std::size_t>(std::ceil(spec.target_depth_m / interval -
                                                              1e-12));
        std::vector<NodePlacement> nodes;
        nodes.reserve(count);
        for (std::size_t j = 1; j <= count; ++j)
            nodes.emplace_back(coil, static_cast<double>(j) * interval);
        const ArrayScenario sc(spec.reader, std::move(nodes), spec.thresholds, spec.medium,
                               spec.mutual);
        const PowerRequirement req =
            minimal_power(sc, spec.p_min_w, spec.p_max_w, spec.criterion, spec.rel_tol, opts);
        rows.push_back({q, interval, count, req.p_min_w, req.reachable, req.solves});
    }
    return rows;
}

// Per sensor of a uniform array: the uplink ratio it would have alone at its
// depth against the ratio it has inside the full array, both judged against
// the detection threshold.
struct UplinkCompareSpec {
    ReaderConfig reader;
    CoilSpec sensor;
    std::size_t sensor_count = 8;
    double interval_m = 0.15;
    Thresholds thresholds;
    MediumConstants medium{};
    MutualPolicy mutual{};
};

struct UplinkCompareRow {
    std::size_t sensor_index;
    double depth_m;
    double alpha_single;
    double alpha_array;
    bool detectable_single;
    bool detectable_array;
};

inline std::vector<UplinkCompareRow> uplink_compare(const UplinkCompareSpec& spec,
                                                    const ConwayOptions& opts = {}) {
    if (spec.sensor_count < 1)
        throw std::invalid_argument("uplink_compare: sensor_count must be >= 1");
    if (!(spec.interval_m > 0.0))
        throw std::invalid_argument("uplink_compare: interval_m must be > 0");

    std::vector<NodePlacement> nodes;
    nodes.reserve(spec.sensor_count);
    for (std::size_t j = 1; j <= spec.sensor_count; ++j)
        nodes.emplace_back(spec.sensor, static_cast<double>(j) * spec.interval_m);
    const ArrayScenario sc(spec.reader, std::move(nodes), spec.thresholds, spec.medium,
                           spec.mutual);
    const LinkSolution sol = solve_exact(sc, opts);

    std::vector<UplinkCompareRow> rows;
    rows.reserve(spec.sensor_count);
    for (std::size_t k = 0; k < spec.sensor_count; ++k) {
        UplinkCompareRow row;
        row.sensor_index = k;
        row.depth_m = sc.sensors[k].depth_m;
        row.alpha_single = uplink_ratio_single(spec.reader, spec.sensor, row.depth_m);
        row.alpha_array = sol.uplink_ratios[k];
        row.detectable_single = row.alpha_single >= spec.thresholds.alpha_threshold;
        row.detectable_array = row.alpha_array >= spec.thresholds.alpha_threshold;
        rows.push_back(row);
    }
    return rows;
}

} // namespace miwg
