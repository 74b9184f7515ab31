#include "vp1d/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "vp1d/errors.hpp"
#include "vp1d/io.hpp"

namespace fs = std::filesystem;

namespace vp1d {

const char* const kVersion = "vp1d 0.1.0";

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return static_cast<int>(d);
    } catch (...) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
}

}  // namespace

void ScenarioConfig::set_key(const std::string& dotted, const std::string& raw) {
    const std::string value = trim(raw);
    const auto dot = dotted.find('.');
    const std::string sec = dot == std::string::npos ? "" : dotted.substr(0, dot);
    const std::string key = dot == std::string::npos ? dotted : dotted.substr(dot + 1);
    const std::string full = sec + "." + key;

    if (sec == "grid") {
        if (key == "nx") nx = parse_int(full, value);
        else if (key == "nv") nv = parse_int(full, value);
        else if (key == "v_max") v_max = parse_double(full, value);
        else throw ConfigError("unknown key " + full);
    } else if (sec == "ions") {
        if (key == "kind") ion_kind = value;
        else throw ConfigError("unknown key " + full);
    } else if (sec == "steady_state") {
        if (key == "family") family = value;
        else if (key == "e_max") e_max = parse_double(full, value);
        else if (key == "eps") eps = parse_double(full, value);
        else if (key == "v0_margin") v0_margin = parse_double(full, value);
        else throw ConfigError("unknown key " + full);
    } else if (sec == "perturbation") {
        if (key == "type") perturbation = value;
        else if (key == "mode") mode = parse_int(full, value);
        else if (key == "amplitude") amplitude = parse_double(full, value);
        else if (key == "bump_x") bump_x = parse_double(full, value);
        else if (key == "bump_v") bump_v = parse_double(full, value);
        else if (key == "bump_sx") bump_sx = parse_double(full, value);
        else if (key == "bump_sv") bump_sv = parse_double(full, value);
        else throw ConfigError("unknown key " + full);
    } else if (sec == "solver") {
        if (key == "dt") dt = parse_double(full, value);
        else if (key == "t_end") t_end = parse_double(full, value);
        else if (key == "snapshot_dt") snapshot_dt = parse_double(full, value);
        else if (key == "sample_dt") sample_dt = parse_double(full, value);
        else throw ConfigError("unknown key " + full);
    } else if (sec == "diagnostics") {
        if (key == "v0") v0 = parse_double(full, value);
        else if (key == "u0") u0 = parse_double(full, value);
        else if (key == "fit_lo") fit_lo = parse_double(full, value);
        else if (key == "fit_hi") fit_hi = parse_double(full, value);
        else if (key == "tracer_mx") tracer_mx = parse_int(full, value);
        else if (key == "tracer_mv") tracer_mv = parse_int(full, value);
        else throw ConfigError("unknown key " + full);
    } else if (sec == "output") {
        if (key == "directory") directory = value;
        else if (key == "seed") seed = static_cast<std::uint64_t>(std::stoull(value));
        else throw ConfigError("unknown key " + full);
    } else {
        throw ConfigError("unknown section [" + sec + "]");
    }
}

ScenarioConfig ScenarioConfig::from_string(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        cfg.set_key(section + "." + key, value);
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::string ScenarioConfig::echo() const {
    std::ostringstream o;
    o << "[grid]\n"
      << "nx = " << nx << "\nnv = " << nv << "\nv_max = " << format_full(v_max) << "\n"
      << "[ions]\nkind = " << ion_kind << "\n"
      << "[steady_state]\nfamily = " << family << "\ne_max = " << format_full(e_max)
      << "\neps = " << format_full(eps) << "\nv0_margin = " << format_full(v0_margin) << "\n"
      << "[perturbation]\ntype = " << perturbation << "\nmode = " << mode
      << "\namplitude = " << format_full(amplitude) << "\nbump_x = " << format_full(bump_x)
      << "\nbump_v = " << format_full(bump_v) << "\nbump_sx = " << format_full(bump_sx)
      << "\nbump_sv = " << format_full(bump_sv) << "\n"
      << "[solver]\ndt = " << format_full(dt) << "\nt_end = " << format_full(t_end)
      << "\nsnapshot_dt = " << format_full(snapshot_dt)
      << "\nsample_dt = " << format_full(sample_dt) << "\n"
      << "[diagnostics]\nv0 = " << format_full(v0) << "\nu0 = " << format_full(u0)
      << "\nfit_lo = " << format_full(fit_lo) << "\nfit_hi = " << format_full(fit_hi)
      << "\ntracer_mx = " << tracer_mx << "\ntracer_mv = " << tracer_mv << "\n"
      << "[output]\ndirectory = " << directory << "\nseed = " << seed << "\n";
    return o.str();
}

void ScenarioConfig::validate() const {
    if (family != "uniform" && family != "delta")
        throw ConfigError("steady_state.family: must be uniform or delta");
    if (ion_kind != "auto" && ion_kind != "uniform" && ion_kind != "delta")
        throw ConfigError("ions.kind: must be auto, uniform or delta");
    if (perturbation != "none" && perturbation != "multiplicative" &&
        perturbation != "additive_bump")
        throw ConfigError("perturbation.type: must be none, multiplicative or additive_bump");
    if (family == "delta") {
        const double m = 0.5 * eps * nx;
        if (std::fabs(m - std::llround(m)) > 1e-9 * nx || m < 1.0)
            throw ConfigError("steady_state.eps: eps/2 must be an integer multiple of dx");
    }
    if (!(dt > 0.0)) throw ConfigError("solver.dt: must be > 0");
    if (t_end < 0.0) throw ConfigError("solver.t_end: must be >= 0");
    if ((tracer_mx != 0) != (tracer_mv != 0))
        throw ConfigError("diagnostics.tracer_mx/tracer_mv: set both or neither");
}

std::vector<DistributionFunction> perturbation_ensemble(const ReferenceState& ref, int count,
                                                        double amplitude, Rng& rng) {
    const PhaseGrid& g = ref.f_star.grid;
    const double m_star = mass(ref.f_star);
    std::vector<DistributionFunction> out;
    out.reserve(count);
    for (int n = 0; n < count; ++n) {
        DistributionFunction f = ref.f_star;
        if (n % 3 != 2) {
            // multiplicative multi-mode perturbation, random phases
            const int kmax = 1 + n % 4;
            std::vector<double> amps(kmax), phs(kmax);
            for (int k = 0; k < kmax; ++k) {
                amps[k] = amplitude * (0.5 + 0.5 * rng.uniform()) / kmax;
                phs[k] = rng.uniform(0.0, 6.283185307179586);
            }
            for (int i = 0; i < g.nx; ++i) {
                double s = 1.0;
                for (int k = 0; k < kmax; ++k)
                    s += amps[k] * std::cos(6.283185307179586 * (k + 1) * g.x(i) + phs[k]);
                for (int j = 0; j < g.nv; ++j) f.at(i, j) *= s;
            }
        } else {
            // localized nonnegative bump inside the support
            const double x0 = rng.uniform();
            const double vc = rng.uniform(-0.3, 0.3) * ref.v0;
            const double sx = 0.05 + 0.05 * rng.uniform();
            const double sv = 0.1 + 0.1 * rng.uniform();
            const double a = amplitude * ref.f_star.at(0, g.nv / 2);
            for (int i = 0; i < g.nx; ++i) {
                double dx = std::fabs(g.x(i) - x0);
                dx = std::min(dx, 1.0 - dx);
                for (int j = 0; j < g.nv; ++j) {
                    const double dv = g.v(j) - vc;
                    f.at(i, j) += a * std::exp(-dx * dx / (sx * sx) - dv * dv / (sv * sv));
                }
            }
        }
        const double m = mass(f);
        for (double& v : f.values) v *= m_star / m;
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

struct Built {
    PhaseGrid grid;
    SteadyStateProfile profile;
    IonDensity ions;
    ReferenceState ref;
    DeltaFamilyParams params;  // delta family only
    bool has_params = false;
};

Built build_state(const ScenarioConfig& cfg) {
    Built b;
    b.grid = PhaseGrid(cfg.nx, cfg.nv, cfg.v_max);
    if (cfg.family == "uniform") {
        const double em = cfg.e_max;
        b.profile = uniform_background_state(
            [em](double e) { return e < em ? std::pow(em - e, 2.5) : 0.0; }, em,
            {true, cfg.v0_margin});
    } else {
        b.params = solve_family(cfg.eps);
        b.has_params = true;
        b.profile = build_potential(b.params, b.grid, {cfg.v0_margin, 1e-3});
    }
    const std::string kind = cfg.ion_kind == "auto"
                                 ? (cfg.family == "uniform" ? "uniform" : "delta")
                                 : cfg.ion_kind;
    b.ions = kind == "uniform" ? IonDensity::uniform(cfg.nx)
                               : IonDensity::delta_desingularized(cfg.nx, cfg.eps);
    b.ref = make_reference(b.profile, b.grid, b.ions, true);
    return b;
}

DistributionFunction perturb(const ScenarioConfig& cfg, const Built& b) {
    DistributionFunction f = b.ref.f_star;
    const PhaseGrid& g = b.grid;
    if (cfg.perturbation == "multiplicative") {
        for (int i = 0; i < g.nx; ++i) {
            const double s =
                1.0 + cfg.amplitude * std::cos(6.283185307179586 * cfg.mode * g.x(i));
            for (int j = 0; j < g.nv; ++j) f.at(i, j) *= s;
        }
    } else if (cfg.perturbation == "additive_bump") {
        for (int i = 0; i < g.nx; ++i) {
            double dx = std::fabs(g.x(i) - cfg.bump_x);
            dx = std::min(dx, 1.0 - dx);
            for (int j = 0; j < g.nv; ++j) {
                const double dv = g.v(j) - cfg.bump_v;
                f.at(i, j) += cfg.amplitude *
                              std::exp(-dx * dx / (cfg.bump_sx * cfg.bump_sx) -
                                       dv * dv / (cfg.bump_sv * cfg.bump_sv));
            }
        }
    }
    // mass back to the reference (= ion) mass so the field solve stays neutral
    const double m0 = mass(b.ref.f_star), m = mass(f);
    for (double& v : f.values) v *= m0 / m;
    return f;
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const char* root = std::getenv("VP1D_OUTPUT_ROOT");
    const fs::path dir = root ? fs::path(root) / cfg.directory : fs::path(cfg.directory);
    fs::create_directories(dir);
    fs::create_directories(dir / "snapshots");

    Built b = build_state(cfg);
    const DistributionFunction f0 = perturb(cfg, b);
    const double diag_v0 = cfg.v0 > 0.0 ? cfg.v0 : b.profile.v0;

    double c1 = 0.0;
    for (double v : f0.values) c1 = std::max(c1, v);
    c1 = 2.0 * std::max(c1, b.profile.phi_max);
    const CasimirKernel kernel = build_kernel(b.profile, c1);

    // observers
    EvolveOptions opt;
    opt.sample_dt = cfg.sample_dt;
    opt.snapshot_dt = cfg.snapshot_dt;
    opt.observables = {
        {"mass", [](double, const DistributionFunction& f, const FieldState&) { return mass(f); }},
        {"H", [](double, const DistributionFunction& f, const FieldState& s) { return energy(f, s); }},
        {"C",
         [&kernel](double, const DistributionFunction& f, const FieldState&) {
             return casimir_functional(f, kernel);
         }},
        {"l2",
         [&b](double, const DistributionFunction& f, const FieldState& s) {
             return distances(f, s, b.ref).l2;
         }},
        {"weighted_l1",
         [&b](double, const DistributionFunction& f, const FieldState& s) {
             return distances(f, s, b.ref).weighted_l1;
         }},
        {"w11",
         [&b](double, const DistributionFunction& f, const FieldState& s) {
             return distances(f, s, b.ref).w11;
         }},
        {"grad_f_l1",
         [diag_v0](double, const DistributionFunction& f, const FieldState&) {
             return grad_l1_norm(f, diag_v0);
         }},
        {"max_abs_E", [](double, const DistributionFunction&, const FieldState& s) {
             return s.max_abs_e();
         }}};

    TracerMesh mesh;
    std::vector<int> all_ids;
    if (cfg.tracer_mx > 0) {
        mesh = TracerMesh::identity(cfg.tracer_mx, cfg.tracer_mv, diag_v0);
        all_ids.resize(mesh.cloud.size());
        std::iota(all_ids.begin(), all_ids.end(), 0);
        opt.tracers = &mesh;
        opt.mesh_observables = {
            {"grad_flow_l1", [](const TracerMesh& m) { return flow_gradient_l1(m); }},
            {"lifted_diameter",
             [&all_ids](const TracerMesh& m) { return lifted_diameter(m.cloud, all_ids); }}};
    }

    SolverConfig scfg;
    scfg.dt = cfg.dt;
    scfg.t_end = cfg.t_end;
    EvolveResult res = evolve(f0, b.ions, scfg, opt);

    // snapshots
    std::vector<std::string> files;
    for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshots/f_t%012.6f.bin", res.snap_times[k]);
        write_grid_binary((dir / name).string(), res.snapshots[k]);
        files.emplace_back(name);
    }
    res.series.write_csv((dir / "series.csv").string());
    files.emplace_back("series.csv");

    // profile artifacts
    write_grid_binary((dir / "f_star.bin").string(), b.ref.f_star);
    files.emplace_back("f_star.bin");
    {
        std::vector<double> xs(b.grid.nx);
        for (int i = 0; i < b.grid.nx; ++i) xs[i] = b.grid.x(i);
        std::vector<double> us(b.grid.nx);
        for (int i = 0; i < b.grid.nx; ++i) us[i] = b.profile.u_at(i);
        write_columns_csv((dir / "profile.csv").string(),
                          {"x", "u_star", "rho_e_star", "e_star"},
                          {&xs, &us, &b.ref.fields.rho_e, &b.ref.fields.E});
        files.emplace_back("profile.csv");
    }
    if (b.has_params) {
        std::ostringstream fam;
        fam << "eps,h,c,u_half,r1,r2\n"
            << format_full(b.params.eps) << "," << format_full(b.params.h) << ","
            << format_full(b.params.c) << "," << format_full(b.params.u_half()) << ","
            << format_full(b.params.r1) << "," << format_full(b.params.r2) << "\n";
        write_text_file((dir / "family_manifest.csv").string(), fam.str());
        files.emplace_back("family_manifest.csv");
    }

    RunSummary sum;
    sum.directory = dir.string();
    if (b.has_params) {
        sum.eps = b.params.eps;
        sum.h = b.params.h;
        sum.c = b.params.c;
        sum.u_half = b.params.u_half();
        sum.r1 = b.params.r1;
        sum.r2 = b.params.r2;
    }

    // drifts from the series
    auto drift = [&](const char* name) {
        const auto& ch = res.series.channel(name);
        double lo = ch[0], hi = ch[0];
        for (double v : ch) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double scale = std::max(std::fabs(ch[0]), 1e-300);
        return std::max(std::fabs(hi - ch[0]), std::fabs(ch[0] - lo)) / scale;
    };
    sum.mass_drift = drift("mass");
    sum.h_drift = drift("H");
    sum.c_drift = drift("C");
    {
        const auto& hch = res.series.channel("H");
        const auto& cch = res.series.channel("C");
        double worst = 0.0;
        const double hc0 = hch[0] + cch[0];
        for (std::size_t k = 0; k < hch.size(); ++k)
            worst = std::max(worst, std::fabs(hch[k] + cch[k] - hc0));
        sum.hc_drift = worst / std::max(std::fabs(hc0), 1e-300);
    }
    {
        const auto& ech = res.series.channel("max_abs_E");
        for (double v : ech) sum.max_abs_e = std::max(sum.max_abs_e, v);
    }

    // coercivity estimate over this run's snapshots
    {
        const double c_star = casimir_functional(b.ref.f_star, kernel);
        const double hc_star = b.ref.h_star + c_star;
        double ct = 0.0;
        bool any = false;
        for (const auto& snap : res.snapshots) {
            const FieldState fsnap = solve_fields(snap, b.ions);
            const DistanceRecord d = distances(snap, fsnap, b.ref);
            if (d.l2 * d.l2 < 1e-14) continue;
            const double num =
                energy(snap, fsnap) + casimir_functional(snap, kernel) - hc_star;
            const double ratio = num / (d.l2 * d.l2);
            ct = any ? std::min(ct, ratio) : ratio;
            any = true;
        }
        sum.c_tilde = any ? ct : 0.0;
    }

    // stability report
    {
        StabilityOptions sopt;
        sopt.u0 = cfg.u0;
        sopt.c_tilde = sum.c_tilde;
        const DiagnosticSeries st =
            stability_report(res.snap_times, res.snapshots, b.ions, b.ref, kernel, sopt);
        st.write_csv((dir / "stability.csv").string());
        files.emplace_back("stability.csv");
        std::ostringstream txt;
        txt << kVersion << " stability report\n"
            << "H(f*) = " << format_full(b.ref.h_star) << "\n"
            << "C2 = max(1/2, 2 + L) = " << format_full(prop41_c2(kernel))
            << "  (L = " << format_full(kernel.lipschitz_l) << ")\n"
            << "measured coercivity c~ = " << format_full(sum.c_tilde) << "\n"
            << "u0 = " << format_full(cfg.u0) << ", v0 = " << format_full(diag_v0) << "\n"
            << "drifts (relative): mass " << format_full(sum.mass_drift) << ", H "
            << format_full(sum.h_drift) << ", C " << format_full(sum.c_drift) << ", H_C "
            << format_full(sum.hc_drift) << "\n"
            << "max |E| over run = " << format_full(sum.max_abs_e) << "\n";
        write_text_file((dir / "stability_summary.txt").string(), txt.str());
        files.emplace_back("stability_summary.txt");
    }

    // twist report (when the window holds enough samples)
    {
        const double lo = cfg.fit_lo >= 0.0 ? cfg.fit_lo : cfg.t_end / 5.0;
        const double hi = cfg.fit_hi >= 0.0 ? cfg.fit_hi : cfg.t_end;
        try {
            const TwistReport rep = twist_report(res.series, lo, hi);
            rep.write_csv((dir / "twist.csv").string());
            files.emplace_back("twist.csv");
            write_text_file((dir / "twist_summary.txt").string(), rep.summary());
            files.emplace_back("twist_summary.txt");
            sum.fit_grad_f = rep.fit_grad_f;
            sum.fit_flow = rep.fit_flow;
        } catch (const WindowTooShort&) {
            // steady-state-only scenarios have nothing to fit
        }
    }

    // manifest last: version, config echo, file list with checksums
    {
        std::ostringstream man;
        man << kVersion << "\n[config]\n" << cfg.echo() << "[files]\n";
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            char hex[32];
            std::snprintf(hex, sizeof hex, "%016llx",
                          static_cast<unsigned long long>(fnv1a_file((dir / f).string())));
            man << f << " " << hex << "\n";
        }
        write_text_file((dir / "manifest.txt").string(), man.str());
    }
    return sum;
}

void sweep(const ScenarioConfig& tmpl, const std::string& param,
           const std::vector<std::string>& values, const std::string& out_dir) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    {
        ScenarioConfig probe = tmpl;
        probe.set_key(param, values.front());  // verifies the parameter exists
    }
    const char* root = std::getenv("VP1D_OUTPUT_ROOT");
    const fs::path dir = root ? fs::path(root) / out_dir : fs::path(out_dir);
    fs::create_directories(dir);

    std::ostringstream csv, failures;
    csv << "value,eps,h,c,u_half,r1,r2,mass_drift,h_drift,c_drift,hc_drift,max_abs_e,"
           "grad_f_slope,flow_slope\n";
    int nfail = 0;
    for (const auto& val : values) {
        ScenarioConfig cfg = tmpl;
        cfg.set_key(param, val);
        cfg.directory = (fs::path(out_dir) / (param + "=" + val)).string();
        try {
            const RunSummary s = run_scenario(cfg);
            csv << val << "," << format_full(s.eps) << "," << format_full(s.h) << ","
                << format_full(s.c) << "," << format_full(s.u_half) << ","
                << format_full(s.r1) << "," << format_full(s.r2) << ","
                << format_full(s.mass_drift) << "," << format_full(s.h_drift) << ","
                << format_full(s.c_drift) << "," << format_full(s.hc_drift) << ","
                << format_full(s.max_abs_e) << "," << format_full(s.fit_grad_f.slope) << ","
                << format_full(s.fit_flow.slope) << "\n";
        } catch (const std::exception& e) {
            ++nfail;
            failures << param << "=" << val << ": " << e.what() << "\n";
        }
    }
    write_text_file((dir / "sweep.csv").string(), csv.str());
    if (nfail > 0) write_text_file((dir / "failures.txt").string(), failures.str());
}

std::vector<GoldenCheck> check_goldens(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("check_goldens: cannot open " + csv_path);
    std::vector<GoldenCheck> out;

    const auto [h0, c0] = solve_eps0_root();
    auto compute = [&](const std::string& name) -> double {
        if (name == "h0") return h0;
        if (name == "c0") return c0;
        if (name == "g_at_c0") return g(c0);
        if (name.rfind("eps_", 0) == 0) {
            const auto us = name.find_last_of('_');
            const double eps = std::stod(name.substr(4, us - 4));
            const DeltaFamilyParams p = solve_family(eps);
            const std::string what = name.substr(us + 1);
            if (what == "h") return p.h;
            if (what == "c") return p.c;
            if (what == "uhalf") return p.u_half();
        }
        throw ConfigError("check_goldens: unknown golden name " + name);
    };

    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line.rfind("name,", 0) == 0) continue;
        std::istringstream ls(line);
        std::string name, sval, stol;
        if (!std::getline(ls, name, ',') || !std::getline(ls, sval, ',') ||
            !std::getline(ls, stol, ','))
            throw ConfigError("check_goldens: malformed line '" + line + "'");
        GoldenCheck c;
        c.name = name;
        c.want = parse_double("goldens." + name, trim(sval));
        c.tol = parse_double("goldens." + name + ".tol", trim(stol));
        c.got = compute(name);
        c.pass = std::fabs(c.got - c.want) <= c.tol;
        out.push_back(c);
    }
    return out;
}

}  // namespace vp1d
