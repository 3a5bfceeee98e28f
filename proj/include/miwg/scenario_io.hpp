#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <miwg/coil.hpp>
#include <miwg/deployment.hpp>
#include <miwg/errors.hpp>
#include <miwg/mutual.hpp>
#include <miwg/network.hpp>
#include <miwg/sweeps.hpp>

// Config schema (strict: unknown keys are rejected with their path):
//   medium:     { permeability, carrier_frequency_hz }
//   reader:     { radius_m, turns, q_factor, transmit_power_w }
//   sensor:     { radius_m, turns, q_factor }          (sweep prototype coil)
//   sensors:    [ { radius_m, turns, q_factor, depth_m, lateral_offset_m } ]
//               or { count, interval_m, radius_m, turns, q_factor, first_depth_m }
//   thresholds: { v_threshold_v, alpha_threshold, v_max_v }
//   mutual:     { policy: "auto"|"dipole"|"conway", near_field_threshold }
//   sweep:      per-subcommand keys, see the parse_* functions
//   search:     { total_depth_m, interval_m, initial{...}, step{...}, max{...},
//                 require_uplink }
//   output:     { format: "csv"|"json", path }
// Every section and key is optional unless a parse_* function says otherwise.

namespace miwg::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct OutputOptions {
    std::string format = "csv";
    std::string path;  // empty: standard output
};

struct DesignRequest {
    SearchSpec spec;
    ArrayScenario base;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

inline void check_keys(const json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; })) {
            std::string msg = "unknown key \"" + key + "\" (allowed:";
            for (const char* k : allowed) msg += std::string(" ") + k;
            fail(path, msg + ")");
        }
    }
}

inline double get_num(const json& j, const std::string& path, const char* key,
                      std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(path + "." + key, "missing required number");
    }
    const auto& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

inline int get_int(const json& j, const std::string& path, const char* key,
                   std::optional<int> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(path + "." + key, "missing required integer");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

inline bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

inline std::string get_str(const json& j, const std::string& path, const char* key,
                           std::optional<std::string> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(path + "." + key, "missing required string");
    }
    const auto& v = j.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

inline std::vector<double> get_num_list(const json& j, const std::string& path, const char* key,
                                        std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array() || v.empty()) fail(path + "." + key, "expected a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(path + "." + key, "expected a non-empty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

inline const json& section(const json& root, const char* key) {
    static const json empty = json::object();
    if (!root.contains(key)) return empty;
    if (!root.at(key).is_object()) fail(std::string("config.") + key, "expected an object");
    return root.at(key);
}

} // namespace detail

inline MediumConstants parse_medium(const json& root) {
    const json& j = detail::section(root, "medium");
    detail::check_keys(j, "config.medium", {"permeability", "carrier_frequency_hz"});
    const MediumConstants fallback{};
    try {
        return MediumConstants(
            detail::get_num(j, "config.medium", "permeability", fallback.permeability),
            detail::get_num(j, "config.medium", "carrier_frequency_hz",
                            fallback.carrier_frequency_hz));
    } catch (const std::invalid_argument& e) {
        detail::fail("config.medium", e.what());
    }
}

inline CoilSpec parse_coil(const json& j, const std::string& path, const CoilSpec& fallback) {
    detail::check_keys(j, path, {"radius_m", "turns", "q_factor"});
    try {
        return CoilSpec(detail::get_num(j, path, "radius_m", fallback.radius_m),
                        detail::get_int(j, path, "turns", fallback.turns),
                        detail::get_num(j, path, "q_factor", fallback.quality_factor));
    } catch (const std::invalid_argument& e) {
        detail::fail(path, e.what());
    }
}

inline ReaderConfig parse_reader(const json& root) {
    const json& j = detail::section(root, "reader");
    detail::check_keys(j, "config.reader", {"radius_m", "turns", "q_factor", "transmit_power_w"});
    const CoilSpec fallback(0.04, 5, 8.0);
    try {
        return ReaderConfig(
            CoilSpec(detail::get_num(j, "config.reader", "radius_m", fallback.radius_m),
                     detail::get_int(j, "config.reader", "turns", fallback.turns),
                     detail::get_num(j, "config.reader", "q_factor", fallback.quality_factor)),
            detail::get_num(j, "config.reader", "transmit_power_w", 0.01));
    } catch (const std::invalid_argument& e) {
        detail::fail("config.reader", e.what());
    }
}

inline Thresholds parse_thresholds(const json& root, const MediumConstants& medium) {
    const json& j = detail::section(root, "thresholds");
    detail::check_keys(j, "config.thresholds", {"v_threshold_v", "alpha_threshold", "v_max_v"});
    const Thresholds fallback = default_thresholds(medium);
    return Thresholds{
        detail::get_num(j, "config.thresholds", "v_threshold_v", fallback.v_threshold),
        detail::get_num(j, "config.thresholds", "alpha_threshold", fallback.alpha_threshold),
        detail::get_num(j, "config.thresholds", "v_max_v", fallback.v_max)};
}

inline MutualPolicy parse_mutual(const json& root) {
    const json& j = detail::section(root, "mutual");
    detail::check_keys(j, "config.mutual", {"policy", "near_field_threshold"});
    MutualPolicy policy;
    const std::string name = detail::get_str(j, "config.mutual", "policy", std::string("auto"));
    if (name == "auto")
        policy.mode = MutualMode::automatic;
    else if (name == "dipole")
        policy.mode = MutualMode::dipole;
    else if (name == "conway")
        policy.mode = MutualMode::conway;
    else
        detail::fail("config.mutual.policy", "expected \"auto\", \"dipole\", or \"conway\"");
    policy.near_field_threshold =
        detail::get_num(j, "config.mutual", "near_field_threshold", policy.near_field_threshold);
    if (!(policy.near_field_threshold > 0.0))
        detail::fail("config.mutual.near_field_threshold", "must be > 0");
    return policy;
}

inline std::vector<NodePlacement> parse_sensors(const json& root) {
    if (!root.contains("sensors")) return {};
    const json& j = root.at("sensors");
    std::vector<NodePlacement> nodes;
    try {
        if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) {
                const std::string path = "config.sensors[" + std::to_string(i) + "]";
                const json& e = j.at(i);
                detail::check_keys(e, path,
                                   {"radius_m", "turns", "q_factor", "depth_m",
                                    "lateral_offset_m"});
                nodes.emplace_back(CoilSpec(detail::get_num(e, path, "radius_m"),
                                            detail::get_int(e, path, "turns", 5),
                                            detail::get_num(e, path, "q_factor")),
                                   detail::get_num(e, path, "depth_m"),
                                   detail::get_num(e, path, "lateral_offset_m", 0.0));
            }
        } else if (j.is_object()) {
            detail::check_keys(j, "config.sensors",
                               {"count", "interval_m", "radius_m", "turns", "q_factor",
                                "first_depth_m"});
            const int count = detail::get_int(j, "config.sensors", "count");
            if (count < 1) detail::fail("config.sensors.count", "must be >= 1");
            const double interval = detail::get_num(j, "config.sensors", "interval_m");
            const double first =
                detail::get_num(j, "config.sensors", "first_depth_m", interval);
            const CoilSpec coil(detail::get_num(j, "config.sensors", "radius_m"),
                                detail::get_int(j, "config.sensors", "turns", 5),
                                detail::get_num(j, "config.sensors", "q_factor"));
            for (int i = 0; i < count; ++i)
                nodes.emplace_back(coil, first + static_cast<double>(i) * interval);
        } else {
            detail::fail("config.sensors", "expected an array or a generator object");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        detail::fail("config.sensors", e.what());
    }
    return nodes;
}

namespace detail {

inline std::vector<double> parse_distances(const json& sweep, const std::string& path) {
    if (!sweep.contains("distances")) return linspace(0.02, 0.2, 91);
    const json& j = sweep.at("distances");
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& e : j) {
            if (!e.is_number()) fail(path + ".distances", "expected numbers");
            out.push_back(e.get<double>());
        }
        if (out.empty()) fail(path + ".distances", "expected a non-empty array");
        return out;
    }
    if (j.is_object()) {
        check_keys(j, path + ".distances", {"start", "stop", "steps"});
        const double start = get_num(j, path + ".distances", "start");
        const double stop = get_num(j, path + ".distances", "stop");
        const int steps = get_int(j, path + ".distances", "steps");
        if (steps < 1) fail(path + ".distances.steps", "must be >= 1");
        return linspace(start, stop, static_cast<std::size_t>(steps));
    }
    fail(path + ".distances", "expected an array or {start, stop, steps}");
}

} // namespace detail

inline SingleRangeSpec parse_single_range(const json& root) {
    detail::check_keys(root, "config",
                       {"medium", "reader", "sensor", "thresholds", "mutual", "sweep", "output"});
    const json& sweep = detail::section(root, "sweep");
    detail::check_keys(sweep, "config.sweep", {"q_factors", "distances"});
    SingleRangeSpec spec{
        parse_reader(root),
        parse_coil(detail::section(root, "sensor"), "config.sensor", CoilSpec(0.025, 5, 8.0)),
        detail::get_num_list(sweep, "config.sweep", "q_factors", {8.0, 16.0, 24.0, 32.0}),
        detail::parse_distances(sweep, "config.sweep"),
        Thresholds{},
        parse_medium(root),
        parse_mutual(root)};
    spec.thresholds = parse_thresholds(root, spec.medium);
    return spec;
}

inline IntervalSweepSpec parse_interval_sweep(const json& root) {
    detail::check_keys(root, "config",
                       {"medium", "reader", "sensor", "thresholds", "mutual", "sweep", "output"});
    const json& sweep = detail::section(root, "sweep");
    detail::check_keys(sweep, "config.sweep", {"q_factors", "coefficients", "sensor_count"});
    IntervalSweepSpec spec{
        parse_reader(root),
        parse_coil(detail::section(root, "sensor"), "config.sensor", CoilSpec(0.025, 5, 8.0)),
        detail::get_num_list(sweep, "config.sweep", "q_factors", {8.0, 16.0, 24.0, 32.0}),
        detail::get_num_list(sweep, "config.sweep", "coefficients", {1.3, 1.4, 1.5, 1.6}),
        static_cast<std::size_t>(detail::get_int(sweep, "config.sweep", "sensor_count", 10)),
        Thresholds{},
        parse_medium(root),
        parse_mutual(root)};
    if (spec.sensor_count < 1) detail::fail("config.sweep.sensor_count", "must be >= 1");
    spec.thresholds = parse_thresholds(root, spec.medium);
    return spec;
}

inline PowerRequirementSpec parse_power_requirement(const json& root) {
    detail::check_keys(root, "config",
                       {"medium", "reader", "sensor", "thresholds", "mutual", "sweep", "output"});
    const json& sweep = detail::section(root, "sweep");
    detail::check_keys(sweep, "config.sweep",
                       {"q_factors", "target_depth_m", "spacing_coefficient", "p_min_w",
                        "p_max_w", "criterion", "rel_tol"});
    PowerRequirementSpec spec{
        parse_reader(root),
        parse_coil(detail::section(root, "sensor"), "config.sensor", CoilSpec(0.025, 5, 8.0)),
        detail::get_num_list(sweep, "config.sweep", "q_factors", {8.0, 16.0, 24.0, 32.0}),
        detail::get_num(sweep, "config.sweep", "target_depth_m", 0.8),
        detail::get_num(sweep, "config.sweep", "spacing_coefficient", 0.8),
        detail::get_num(sweep, "config.sweep", "p_min_w", 0.01),
        detail::get_num(sweep, "config.sweep", "p_max_w", 1.0),
        PowerCriterion::deepest_sensor,
        detail::get_num(sweep, "config.sweep", "rel_tol", 1e-4),
        Thresholds{},
        parse_medium(root),
        parse_mutual(root)};
    const std::string criterion = detail::get_str(sweep, "config.sweep", "criterion",
                                                  std::string("deepest_sensor"));
    if (criterion == "all_sensors")
        spec.criterion = PowerCriterion::all_sensors;
    else if (criterion == "deepest_sensor")
        spec.criterion = PowerCriterion::deepest_sensor;
    else
        detail::fail("config.sweep.criterion",
                     "expected \"all_sensors\" or \"deepest_sensor\"");
    spec.thresholds = parse_thresholds(root, spec.medium);
    return spec;
}

inline UplinkCompareSpec parse_uplink_compare(const json& root) {
    detail::check_keys(root, "config",
                       {"medium", "reader", "sensor", "thresholds", "mutual", "sweep", "output"});
    const json& sweep = detail::section(root, "sweep");
    detail::check_keys(sweep, "config.sweep", {"sensor_count", "interval_m"});
    UplinkCompareSpec spec{
        parse_reader(root),
        parse_coil(detail::section(root, "sensor"), "config.sensor", CoilSpec(0.05, 5, 32.0)),
        static_cast<std::size_t>(detail::get_int(sweep, "config.sweep", "sensor_count", 8)),
        detail::get_num(sweep, "config.sweep", "interval_m", 0.15),
        Thresholds{},
        parse_medium(root),
        parse_mutual(root)};
    if (spec.sensor_count < 1) detail::fail("config.sweep.sensor_count", "must be >= 1");
    if (!(spec.interval_m > 0.0)) detail::fail("config.sweep.interval_m", "must be > 0");
    spec.thresholds = parse_thresholds(root, spec.medium);
    return spec;
}

inline DesignRequest parse_design(const json& root) {
    detail::check_keys(root, "config",
                       {"medium", "reader", "sensors", "thresholds", "mutual", "search",
                        "output"});
    if (!root.contains("search"))
        detail::fail("config.search", "missing required section for the design subcommand");
    const json& j = root.at("search");
    detail::check_keys(j, "config.search",
                       {"total_depth_m", "interval_m", "initial", "step", "max",
                        "require_uplink"});

    SearchInitial initial;
    if (j.contains("initial")) {
        const json& e = j.at("initial");
        detail::check_keys(e, "config.search.initial", {"q_factor", "p_t_w", "radius_m"});
        initial.q_factor = detail::get_num(e, "config.search.initial", "q_factor",
                                           initial.q_factor);
        initial.p_t_w = detail::get_num(e, "config.search.initial", "p_t_w", initial.p_t_w);
        initial.radius_m = detail::get_num(e, "config.search.initial", "radius_m",
                                           initial.radius_m);
    }
    SearchSteps steps;
    if (j.contains("step")) {
        const json& e = j.at("step");
        detail::check_keys(e, "config.search.step", {"q_factor", "p_t_w", "radius_m"});
        steps.q_step = detail::get_num(e, "config.search.step", "q_factor", steps.q_step);
        steps.p_step = detail::get_num(e, "config.search.step", "p_t_w", steps.p_step);
        steps.a_step = detail::get_num(e, "config.search.step", "radius_m", steps.a_step);
    }
    SearchMaxima maxima;
    if (j.contains("max")) {
        const json& e = j.at("max");
        detail::check_keys(e, "config.search.max", {"q_factor", "p_t_w", "radius_m"});
        maxima.q_max = detail::get_num(e, "config.search.max", "q_factor", maxima.q_max);
        maxima.p_max = detail::get_num(e, "config.search.max", "p_t_w", maxima.p_max);
        maxima.a_max = detail::get_num(e, "config.search.max", "radius_m", maxima.a_max);
    }

    const MediumConstants medium = parse_medium(root);
    const Thresholds thresholds = parse_thresholds(root, medium);
    try {
        SearchSpec spec(detail::get_num(j, "config.search", "total_depth_m"),
                        detail::get_num(j, "config.search", "interval_m"), initial, steps,
                        maxima);
        spec.require_uplink = detail::get_bool(j, "config.search", "require_uplink", false);
        ArrayScenario base(parse_reader(root), parse_sensors(root), thresholds, medium,
                           parse_mutual(root));
        return DesignRequest{std::move(spec), std::move(base)};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        detail::fail("config.search", e.what());
    }
}

inline OutputOptions parse_output(const json& root) {
    const json& j = detail::section(root, "output");
    detail::check_keys(j, "config.output", {"format", "path"});
    OutputOptions out;
    out.format = detail::get_str(j, "config.output", "format", out.format);
    if (out.format != "csv" && out.format != "json")
        detail::fail("config.output.format", "expected \"csv\" or \"json\"");
    out.path = detail::get_str(j, "config.output", "path", std::string());
    return out;
}

inline json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// Calibrated defaults, printed by the `defaults` subcommand. The power-up
// threshold is the closed-form voltage of the default link (reader a=0.04 m
// n=5 Q=8 at 10 mW, sensor a=0.025 m n=5 Q=8) at 0.06 m; the uplink
// threshold is the standalone ratio of the deployment coil (a=0.05 m n=5
// Q=32) at 0.45 m.
inline ordered_json defaults_json() {
    const MediumConstants medium{};
    const Thresholds th = default_thresholds(medium);
    ordered_json j;
    j["medium"] = {{"permeability", medium.permeability},
                   {"carrier_frequency_hz", medium.carrier_frequency_hz},
                   {"angular_frequency_rad_s", medium.angular_frequency()}};
    j["reader"] = {{"radius_m", 0.04}, {"turns", 5}, {"q_factor", 8.0},
                   {"transmit_power_w", 0.01}};
    j["thresholds"] = {{"v_threshold_v", th.v_threshold},
                       {"alpha_threshold", th.alpha_threshold},
                       {"v_max_v", th.v_max}};
    j["calibration"] = {{"downlink_anchor",
                         "sensor a=0.025 m, n=5, Q=8 powered at 0.06 m from the default reader"},
                        {"uplink_anchor",
                         "sensor a=0.05 m, n=5, Q=32 detectable alone at 0.45 m"}};
    j["mutual"] = {{"policy", "auto"}, {"near_field_threshold", MutualPolicy{}.near_field_threshold}};
    return j;
}

// CSV helpers: %.12g keeps full precision while staying compact; booleans
// are spelled out.

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline const char* format_bool(bool b) { return b ? "true" : "false"; }

inline std::string csv_single_range(const SingleRangeResult& result) {
    std::string out = "q_factor,distance_m,v_load_v,alpha,powered,limit\n";
    for (const auto& r : result.rows) {
        out += format_number(r.q_factor) + "," + format_number(r.distance_m) + "," +
               format_number(r.v_load_v) + "," + format_number(r.alpha) + "," +
               format_bool(r.powered) + "," + to_string(r.limit) + "\n";
    }
    return out;
}

inline std::string csv_interval_sweep(const IntervalSweepResult& result) {
    std::string out = "coefficient,q_factor,interval_m,deepest_v_load_v\n";
    for (const auto& r : result.rows)
        out += format_number(r.coefficient) + "," + format_number(r.q_factor) + "," +
               format_number(r.interval_m) + "," + format_number(r.deepest_v_load_v) + "\n";
    return out;
}

inline std::string csv_power_requirement(const std::vector<PowerRequirementRow>& rows) {
    std::string out = "q_factor,interval_m,sensor_count,p_min_w,reachable,solves\n";
    for (const auto& r : rows)
        out += format_number(r.q_factor) + "," + format_number(r.interval_m) + "," +
               std::to_string(r.sensor_count) + "," + format_number(r.p_min_w) + "," +
               format_bool(r.reachable) + "," + std::to_string(r.solves) + "\n";
    return out;
}

inline std::string csv_uplink_compare(const std::vector<UplinkCompareRow>& rows) {
    std::string out =
        "sensor_index,depth_m,alpha_single,alpha_array,detectable_single,detectable_array\n";
    for (const auto& r : rows)
        out += std::to_string(r.sensor_index) + "," + format_number(r.depth_m) + "," +
               format_number(r.alpha_single) + "," + format_number(r.alpha_array) + "," +
               format_bool(r.detectable_single) + "," + format_bool(r.detectable_array) + "\n";
    return out;
}

inline std::string csv_search(const SearchOutcome& outcome) {
    std::string out = "feasible,q_factor,p_t_w,radius_m,iterations,min_voltage_v\n";
    out += std::string(format_bool(outcome.feasible)) + "," + format_number(outcome.q_factor) +
           "," + format_number(outcome.p_t_w) + "," + format_number(outcome.radius_m) + "," +
           std::to_string(outcome.iterations) + "," + format_number(outcome.min_voltage_v) + "\n";
    return out;
}

inline ordered_json json_thresholds(const Thresholds& th) {
    return {{"v_threshold_v", th.v_threshold},
            {"alpha_threshold", th.alpha_threshold},
            {"v_max_v", th.v_max}};
}

inline ordered_json json_single_range(const SingleRangeResult& result, const Thresholds& th) {
    ordered_json j;
    j["command"] = "single-range";
    j["units"] = {{"distance", "m"}, {"voltage", "V"}};
    j["thresholds"] = json_thresholds(th);
    j["rows"] = ordered_json::array();
    for (const auto& r : result.rows)
        j["rows"].push_back({{"q_factor", r.q_factor},
                             {"distance_m", r.distance_m},
                             {"v_load_v", r.v_load_v},
                             {"alpha", r.alpha},
                             {"powered", r.powered},
                             {"limit", to_string(r.limit)},
                             {"v_closed_form_v", r.v_closed_form_v}});
    j["markers"] = ordered_json::array();
    for (const auto& m : result.markers)
        j["markers"].push_back({{"q_factor", m.q_factor},
                                {"d_max_downlink_m", m.d_max_downlink_m},
                                {"d_max_uplink_m", m.d_max_uplink_m}});
    return j;
}

inline ordered_json json_interval_sweep(const IntervalSweepResult& result, const Thresholds& th) {
    ordered_json j;
    j["command"] = "interval-sweep";
    j["units"] = {{"interval", "m"}, {"voltage", "V"}};
    j["thresholds"] = json_thresholds(th);
    j["rows"] = ordered_json::array();
    for (const auto& r : result.rows)
        j["rows"].push_back({{"coefficient", r.coefficient},
                             {"q_factor", r.q_factor},
                             {"interval_m", r.interval_m},
                             {"deepest_v_load_v", r.deepest_v_load_v}});
    j["spreads"] = ordered_json::array();
    for (const auto& s : result.spreads)
        j["spreads"].push_back(
            {{"coefficient", s.coefficient}, {"relative_spread", s.relative_spread}});
    return j;
}

inline ordered_json json_power_requirement(const std::vector<PowerRequirementRow>& rows,
                                           const Thresholds& th) {
    ordered_json j;
    j["command"] = "power-requirement";
    j["units"] = {{"interval", "m"}, {"power", "W"}};
    j["thresholds"] = json_thresholds(th);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
        j["rows"].push_back({{"q_factor", r.q_factor},
                             {"interval_m", r.interval_m},
                             {"sensor_count", r.sensor_count},
                             {"p_min_w", r.p_min_w},
                             {"reachable", r.reachable},
                             {"solves", r.solves}});
    return j;
}

inline ordered_json json_uplink_compare(const std::vector<UplinkCompareRow>& rows,
                                        const Thresholds& th) {
    ordered_json j;
    j["command"] = "uplink-compare";
    j["units"] = {{"depth", "m"}};
    j["thresholds"] = json_thresholds(th);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
        j["rows"].push_back({{"sensor_index", r.sensor_index},
                             {"depth_m", r.depth_m},
                             {"alpha_single", r.alpha_single},
                             {"alpha_array", r.alpha_array},
                             {"detectable_single", r.detectable_single},
                             {"detectable_array", r.detectable_array}});
    return j;
}

inline ordered_json json_search(const SearchOutcome& outcome, const Thresholds& th) {
    ordered_json j;
    j["command"] = "design";
    j["units"] = {{"radius", "m"}, {"power", "W"}, {"voltage", "V"}};
    j["thresholds"] = json_thresholds(th);
    j["feasible"] = outcome.feasible;
    j["q_factor"] = outcome.q_factor;
    j["p_t_w"] = outcome.p_t_w;
    j["radius_m"] = outcome.radius_m;
    j["iterations"] = outcome.iterations;
    j["min_voltage_v"] = outcome.min_voltage_v;
    j["per_sensor_voltages"] = outcome.per_sensor_voltages;
    j["overvoltage_flags"] = ordered_json::array();
    for (bool f : outcome.overvoltage_flags) j["overvoltage_flags"].push_back(f);
    return j;
}

} // namespace miwg::io
