#include "siri/cli.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siri/scenario.hpp"

namespace siri {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    double step = 0.0;
    double t_end = 0.0;
    bool no_certificates = false;
};

void add_scenario_options(CLI::App* cmd, CommonOpts& o, bool with_run_flags) {
    cmd->add_option("--config", o.config_path, "scenario config file");
    cmd->add_option("--preset", o.preset, "builtin scenario: fig1 or fig2");
    if (with_run_flags) {
        cmd->add_option("--out", o.out_dir, "output directory for CSV and summary");
        cmd->add_option("--step", o.step, "override run.step");
        cmd->add_option("--t-end", o.t_end, "override run.t_end");
        cmd->add_flag("--no-certificates", o.no_certificates,
                      "skip certificate evaluation");
    }
}

ScenarioConfig resolve_config(const CommonOpts& o) {
    if (!o.config_path.empty() && !o.preset.empty())
        throw ConfigError("--config and --preset are mutually exclusive");
    ScenarioConfig cfg;
    if (!o.config_path.empty())
        cfg = load_config(o.config_path);
    else if (!o.preset.empty())
        cfg = preset_config(o.preset);
    else
        throw ConfigError("one of --config or --preset is required");
    if (o.step > 0.0) {
        cfg.step = o.step;
        cfg.kernel_nodes = 0;  // keep nodes derived from the new step
    }
    if (o.t_end > 0.0) cfg.t_end = o.t_end;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.no_certificates) cfg.certificates = false;
    cfg.validate();
    return cfg;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("not a number in list: '" + item + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ConfigError("expected a comma-separated number list");
    return out;
}

int cmd_analyze(const CommonOpts& o) {
    const ScenarioConfig cfg = resolve_config(o);
    const EquilibriumReport rep =
        endemic_equilibrium(cfg.params, cfg.build_incidence());
    std::cout << "R0 = " << num(rep.R0) << "  ("
              << (rep.R0 > 1.0 ? "endemic regime" : "infection-free regime")
              << ")\n";
    std::cout << "k = " << num(rep.k) << '\n';
    std::cout << "E0 = (" << num(rep.E0.s) << ", 0, 0)\n";
    if (rep.endemic)
        std::cout << "E* = (" << num(rep.endemic->s) << ", " << num(rep.endemic->i)
                  << ", " << num(rep.endemic->r) << ")\n";
    else
        std::cout << "E* : absent (R0 <= 1)\n";
    std::cout << "residual = " << num(rep.residual) << '\n';
    return 0;
}

int cmd_run(const CommonOpts& o) {
    CommonOpts opts = o;
    if (opts.out_dir.empty()) opts.out_dir = ".";
    const ScenarioConfig cfg = resolve_config(opts);
    const RunOutputs outputs = run_scenario(cfg);
    std::cout << format_summary(outputs.summary);
    return exit_code_for(outputs);
}

int cmd_sweep(const CommonOpts& o, const std::string& param,
              const std::string& values_text) {
    const ScenarioConfig cfg = resolve_config(o);
    const std::vector<double> values = parse_list(values_text);
    const std::vector<SweepRow> rows = sweep(cfg, param, values);
    std::printf("%-16s %-16s %-9s %s\n", param.c_str(), "R0", "endemic", "i_star");
    for (const SweepRow& row : rows)
        std::printf("%-16.10g %-16.10g %-9s %s\n", row.value, row.R0,
                    row.endemic ? "yes" : "no",
                    row.i_star ? num(*row.i_star).c_str() : "-");
    return 0;
}

int cmd_verify_incidence(const CommonOpts& o, const std::string& s_grid_text,
                         const std::string& i_grid_text) {
    const ScenarioConfig cfg = resolve_config(o);
    const IncidenceFunction inc = cfg.build_incidence();
    const std::vector<double> s_grid = parse_list(s_grid_text);
    const std::vector<double> i_grid = parse_list(i_grid_text);
    const HypothesisReport rep = check_hypotheses(inc, s_grid, i_grid);
    auto line = [](const char* name, bool ok) {
        std::printf("%-28s %s\n", name, ok ? "PASS" : "FAIL");
    };
    std::printf("incidence family: %s\n", inc.family_tag.c_str());
    line("f increasing in s", rep.h1_increasing_in_s);
    line("f non-decreasing in i", rep.h1_increasing_in_i);
    line("phi bounded on grid", rep.h2_bounded);
    line("phi non-increasing in i", rep.h2_decreasing);
    line("zero incidence boundaries", rep.h3_boundary);
    std::printf("phi grid supremum: %s\n", num(rep.phi_supremum).c_str());
    if (rep.has_witness)
        std::printf("first violation: %s at (s, i) = (%s, %s)\n",
                    rep.witness_clause.c_str(), num(rep.witness_s).c_str(),
                    num(rep.witness_i).c_str());
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"delayed relapse epidemic model: analysis, simulation and "
                 "stability certificates"};
    app.require_subcommand(1);

    CommonOpts analyze_opts;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "compute R0 and the equilibria for a scenario");
    add_scenario_options(analyze, analyze_opts, false);

    CommonOpts run_opts;
    CLI::App* run = app.add_subcommand(
        "run", "integrate a scenario and evaluate certificates");
    add_scenario_options(run, run_opts, true);

    CommonOpts sweep_opts;
    std::string sweep_param, sweep_values;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "tabulate R0 and E* across parameter values");
    add_scenario_options(sweep_cmd, sweep_opts, false);
    sweep_cmd->add_option("--param", sweep_param,
                          "one of Lambda, mu, gamma, c, beta, delta, h")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
        ->required();

    CommonOpts verify_opts;
    std::string s_grid = "0,1,5,10,25,50,75,100";
    std::string i_grid = "0,0.1,0.5,1,5,10,25,50";
    CLI::App* verify = app.add_subcommand(
        "verify-incidence", "check the incidence hypotheses on a grid");
    add_scenario_options(verify, verify_opts, false);
    verify->add_option("--s-grid", s_grid, "comma-separated susceptible grid");
    verify->add_option("--i-grid", i_grid, "comma-separated infective grid");

    int rc = 0;
    analyze->callback([&] { rc = cmd_analyze(analyze_opts); });
    run->callback([&] { rc = cmd_run(run_opts); });
    sweep_cmd->callback([&] { rc = cmd_sweep(sweep_opts, sweep_param, sweep_values); });
    verify->callback([&] { rc = cmd_verify_incidence(verify_opts, s_grid, i_grid); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}

}  // namespace siri
