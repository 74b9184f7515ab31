// Command-line runner: steady-state construction, dynamics, post-processing,
// parameter sweeps and golden-value regression.
//
//   vp1d steady  --config cfg.ini [--out DIR]
//   vp1d evolve  --config cfg.ini [--out DIR]
//   vp1d diagnose --run DIR [--fit-lo T] [--fit-hi T]
//   vp1d sweep   --config cfg.ini --param steady_state.eps --values 1e-1,1e-2
//   vp1d goldens --check [--file data/goldens.csv]
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.
// VP1D_OUTPUT_ROOT prefixes relative output directories.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vp1d/errors.hpp"
#include "vp1d/io.hpp"
#include "vp1d/scenario.hpp"

namespace fs = std::filesystem;
using namespace vp1d;

namespace {

int run_steady(const std::string& cfg_path, const std::string& out) {
    ScenarioConfig cfg = ScenarioConfig::from_file(cfg_path);
    cfg.t_end = 0.0;  // construction only
    if (!out.empty()) cfg.directory = out;
    const RunSummary s = run_scenario(cfg);
    std::printf("steady state written to %s\n", s.directory.c_str());
    if (s.c > 0.0)
        std::printf("family member: eps=%g h=%.12g c=%.12g U(1/2)=%.12g\n", s.eps, s.h, s.c,
                    s.u_half);
    return 0;
}

int run_evolve(const std::string& cfg_path, const std::string& out) {
    ScenarioConfig cfg = ScenarioConfig::from_file(cfg_path);
    if (!out.empty()) cfg.directory = out;
    const RunSummary s = run_scenario(cfg);
    std::printf("run written to %s\n", s.directory.c_str());
    std::printf("drifts: mass %.3g  H %.3g  C %.3g  H_C %.3g   max|E| %.6g\n", s.mass_drift,
                s.h_drift, s.c_drift, s.hc_drift, s.max_abs_e);
    if (!s.fit_flow.degenerate && s.fit_flow.slope != 0.0)
        std::printf("grad_flow_l1 fit: slope %.6g r2 %.4f\n", s.fit_flow.slope, s.fit_flow.r2);
    return 0;
}

// re-fit the twist observables of an existing run directory
int run_diagnose(const std::string& run_dir, double fit_lo, double fit_hi) {
    const fs::path dir(run_dir);
    const fs::path series_path = dir / "series.csv";
    std::ifstream in(series_path);
    if (!in) throw ConfigError("diagnose: no series.csv in " + run_dir);

    DiagnosticSeries series;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("diagnose: empty series.csv");
    {
        std::istringstream hs(line);
        std::string name;
        std::getline(hs, name, ',');  // t
        while (std::getline(hs, name, ',')) series.add_channel(name);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        const double t = std::stod(cell);
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        series.push_sample(t, vals);
    }
    const double t_end = series.times.back();
    const double lo = fit_lo >= 0.0 ? fit_lo : t_end / 5.0;
    const double hi = fit_hi >= 0.0 ? fit_hi : t_end;
    const TwistReport rep = twist_report(series, lo, hi);
    rep.write_csv((dir / "twist.csv").string());
    write_text_file((dir / "twist_summary.txt").string(), rep.summary());
    std::printf("%s", rep.summary().c_str());
    return 0;
}

int run_sweep(const std::string& cfg_path, const std::string& param,
              const std::string& values_csv, const std::string& out) {
    ScenarioConfig tmpl = ScenarioConfig::from_file(cfg_path);
    std::vector<std::string> values;
    std::istringstream vs(values_csv);
    std::string v;
    while (std::getline(vs, v, ',')) values.push_back(v);
    const std::string out_dir = out.empty() ? tmpl.directory + "_sweep" : out;
    sweep(tmpl, param, values, out_dir);
    std::printf("sweep written to %s\n", out_dir.c_str());
    return 0;
}

int run_goldens(const std::string& file) {
    const auto checks = check_goldens(file);
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-18s got %.15g  want %.15g  tol %.1g  %s\n", c.name.c_str(), c.got,
                    c.want, c.tol, c.pass ? "ok" : "MISMATCH");
        all = all && c.pass;
    }
    if (!all) throw NumericalError("goldens: mismatch against blessed values");
    std::printf("all %zu goldens ok\n", checks.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D-1V periodic Vlasov-Poisson simulator"};
    app.require_subcommand(1);

    std::string cfg_path, out, run_dir, param, values, goldens_file = "data/goldens.csv";
    double fit_lo = -1.0, fit_hi = -1.0;
    bool check = false;

    auto* steady = app.add_subcommand("steady", "construct a steady-state family member");
    steady->add_option("--config", cfg_path, "scenario config file")->required();
    steady->add_option("--out", out, "output directory override");

    auto* evolve_cmd = app.add_subcommand("evolve", "run the dynamics");
    evolve_cmd->add_option("--config", cfg_path, "scenario config file")->required();
    evolve_cmd->add_option("--out", out, "output directory override");

    auto* diag = app.add_subcommand("diagnose", "post-process a run directory");
    diag->add_option("--run", run_dir, "run directory")->required();
    diag->add_option("--fit-lo", fit_lo, "fit window start");
    diag->add_option("--fit-hi", fit_hi, "fit window end");

    auto* sweep_cmd = app.add_subcommand("sweep", "one run per parameter value");
    sweep_cmd->add_option("--config", cfg_path, "template config file")->required();
    sweep_cmd->add_option("--param", param, "dotted parameter name")->required();
    sweep_cmd->add_option("--values", values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", out, "sweep output directory");

    auto* gold = app.add_subcommand("goldens", "golden-value regression");
    gold->add_flag("--check", check, "recompute and compare");
    gold->add_option("--file", goldens_file, "goldens csv path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed()) return run_steady(cfg_path, out);
        if (evolve_cmd->parsed()) return run_evolve(cfg_path, out);
        if (diag->parsed()) return run_diagnose(run_dir, fit_lo, fit_hi);
        if (sweep_cmd->parsed()) return run_sweep(cfg_path, param, values, out);
        if (gold->parsed()) {
            if (!check) throw ConfigError("goldens: pass --check");
            return run_goldens(goldens_file);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
