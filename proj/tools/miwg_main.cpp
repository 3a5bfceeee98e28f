#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <miwg/miwg.hpp>
#include <miwg/scenario_io.hpp>

// Exit codes: 0 success (including --help), 2 configuration or usage error,
// 3 numerical failure, 4 infeasible design under --require-feasible,
// 1 unexpected.

namespace {

constexpr int exit_ok = 0;
constexpr int exit_unexpected = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_infeasible = 4;

struct CommonArgs {
    std::string config_path;
    std::string format;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file (defaults used if omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", args.format, "output format, overrides the config")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", args.out_path, "output file path, overrides the config");
}

miwg::io::json load_or_default(const CommonArgs& args) {
    if (args.config_path.empty()) return miwg::io::json::object();
    return miwg::io::load_config(args.config_path);
}

miwg::io::OutputOptions resolve_output(const miwg::io::json& root, const CommonArgs& args) {
    miwg::io::OutputOptions opts = miwg::io::parse_output(root);
    if (!args.format.empty()) opts.format = args.format;
    if (!args.out_path.empty()) opts.path = args.out_path;
    return opts;
}

void emit(const std::string& data, const miwg::io::OutputOptions& opts) {
    if (opts.path.empty()) {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return;
    }
    std::ofstream out(opts.path, std::ios::binary);
    if (!out) throw miwg::ConfigError("cannot open output file: " + opts.path);
    out << data;
    if (!out) throw miwg::ConfigError("failed writing output file: " + opts.path);
}

int run_single_range(const CommonArgs& args) {
    const auto root = load_or_default(args);
    const auto spec = miwg::io::parse_single_range(root);
    const auto out = resolve_output(root, args);
    const auto result = miwg::single_range(spec);
    emit(out.format == "csv"
             ? miwg::io::csv_single_range(result)
             : miwg::io::json_single_range(result, spec.thresholds).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_interval_sweep(const CommonArgs& args) {
    const auto root = load_or_default(args);
    const auto spec = miwg::io::parse_interval_sweep(root);
    const auto out = resolve_output(root, args);
    const auto result = miwg::interval_sweep(spec);
    emit(out.format == "csv"
             ? miwg::io::csv_interval_sweep(result)
             : miwg::io::json_interval_sweep(result, spec.thresholds).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_power_requirement(const CommonArgs& args) {
    const auto root = load_or_default(args);
    const auto spec = miwg::io::parse_power_requirement(root);
    const auto out = resolve_output(root, args);
    const auto rows = miwg::power_requirement(spec);
    emit(out.format == "csv"
             ? miwg::io::csv_power_requirement(rows)
             : miwg::io::json_power_requirement(rows, spec.thresholds).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_uplink_compare(const CommonArgs& args) {
    const auto root = load_or_default(args);
    const auto spec = miwg::io::parse_uplink_compare(root);
    const auto out = resolve_output(root, args);
    const auto rows = miwg::uplink_compare(spec);
    emit(out.format == "csv"
             ? miwg::io::csv_uplink_compare(rows)
             : miwg::io::json_uplink_compare(rows, spec.thresholds).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_design(const CommonArgs& args, bool require_feasible) {
    const auto root = load_or_default(args);
    const auto request = miwg::io::parse_design(root);
    const auto out = resolve_output(root, args);
    const auto outcome = miwg::search(request.spec, request.base);
    const miwg::Thresholds th{request.base.v_threshold, request.base.alpha_threshold,
                              request.base.v_max};
    emit(out.format == "csv" ? miwg::io::csv_search(outcome)
                             : miwg::io::json_search(outcome, th).dump(2) + "\n",
         out);
    if (require_feasible && !outcome.feasible) return exit_infeasible;
    return exit_ok;
}

int run_defaults(const std::string& out_path) {
    miwg::io::OutputOptions out;
    out.format = "json";
    out.path = out_path;
    emit(miwg::io::defaults_json().dump(2) + "\n", out);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"magnetic-induction waveguide link planner"};
    app.require_subcommand(1);

    CommonArgs sr_args;
    auto* sr = app.add_subcommand("single-range",
                                  "one sensor swept over distance per quality factor");
    add_common(sr, sr_args);

    CommonArgs is_args;
    auto* is = app.add_subcommand("interval-sweep",
                                  "deepest voltage of a uniform array per spacing coefficient");
    add_common(is, is_args);

    CommonArgs pr_args;
    auto* pr = app.add_subcommand("power-requirement",
                                  "minimal transmit power to reach a target depth");
    add_common(pr, pr_args);

    CommonArgs uc_args;
    auto* uc = app.add_subcommand("uplink-compare",
                                  "standalone vs in-array uplink ratio per sensor");
    add_common(uc, uc_args);

    CommonArgs de_args;
    bool require_feasible = false;
    auto* de = app.add_subcommand("design", "grid search for a feasible (Q, P_t, a) triple");
    add_common(de, de_args);
    de->add_flag("--require-feasible", require_feasible,
                 "exit with status 4 when the search ends infeasible");

    std::string defaults_out;
    auto* df = app.add_subcommand("defaults", "print the calibrated constants as JSON");
    df->add_option("--out", defaults_out, "output file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (app.got_subcommand(sr)) return run_single_range(sr_args);
        if (app.got_subcommand(is)) return run_interval_sweep(is_args);
        if (app.got_subcommand(pr)) return run_power_requirement(pr_args);
        if (app.got_subcommand(uc)) return run_uplink_compare(uc_args);
        if (app.got_subcommand(de)) return run_design(de_args, require_feasible);
        if (app.got_subcommand(df)) return run_defaults(defaults_out);
        std::cerr << "error: no subcommand selected\n";
        return exit_config;
    } catch (const miwg::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unexpected;
    }
}
