#ifndef VP1D_SCENARIO_HPP
#define VP1D_SCENARIO_HPP

#include <string>
#include <vector>

#include "vp1d/casimir.hpp"
#include "vp1d/filamentation.hpp"
#include "vp1d/rng.hpp"
#include "vp1d/steady_states.hpp"
#include "vp1d/vlasov_solver.hpp"

namespace vp1d {

/// Line-oriented key = value configuration with [sections]; # and ; start
/// comments. Unknown keys are field-level errors.
struct ScenarioConfig {
    // [grid]
    int nx = 256;
    int nv = 513;
    double v_max = 4.0;
    // [ions]  auto = match the steady-state family
    std::string ion_kind = "auto";  // auto | uniform | delta
    // [steady_state]
    std::string family = "uniform";  // uniform | delta
    double e_max = 0.5;              // uniform-family profile parameter
    double eps = 0.03125;            // delta-family width
    double v0_margin = 1.0;
    // [perturbation]
    std::string perturbation = "none";  // none | multiplicative | additive_bump
    int mode = 1;
    double amplitude = 0.0;
    double bump_x = 0.25, bump_v = 0.5, bump_sx = 0.05, bump_sv = 0.2;
    // [solver]
    double dt = 0.01;
    double t_end = 10.0;
    double snapshot_dt = 1.0;
    double sample_dt = 0.1;
    // [diagnostics]
    double v0 = 0.0;  // 0 = profile value
    double u0 = 4.0;
    double fit_lo = -1.0;  // -1 = t_end/5
    double fit_hi = -1.0;  // -1 = t_end
    int tracer_mx = 0;     // 0 = no tracer mesh
    int tracer_mv = 0;
    // [output]
    std::string directory = "run";
    std::uint64_t seed = 12345;

    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_string(const std::string& text);
    void set_key(const std::string& dotted, const std::string& value);
    std::string echo() const;  // canonical serialization (manifest / reruns)
    void validate() const;
};

struct RunSummary {
    std::string directory;
    double eps = 0.0, h = 0.0, c = 0.0, u_half = 0.0, r1 = 0.0, r2 = 0.0;
    double mass_drift = 0.0, h_drift = 0.0, c_drift = 0.0, hc_drift = 0.0;
    double max_abs_e = 0.0;
    double c_tilde = 0.0;
    SeriesFit fit_grad_f, fit_flow;
};

/// Build the steady state, perturb, evolve, and write the artifact
/// directory: manifest (config echo + version + checksums), snapshots,
/// diagnostic series, twist report, stability report. Byte-identical
/// outputs for identical config and version.
RunSummary run_scenario(const ScenarioConfig& cfg);

/// one run per value of the dotted parameter; aggregated summary CSV plus a
/// partial-failure manifest. Throws ConfigError on an empty value list.
void sweep(const ScenarioConfig& tmpl, const std::string& param,
           const std::vector<std::string>& values, const std::string& out_dir);

/// admissible perturbation ensemble around the reference state (bounded,
/// weighted-L1 small, mass matched to the reference), deterministic in seed
std::vector<DistributionFunction> perturbation_ensemble(const ReferenceState& ref, int count,
                                                        double amplitude, Rng& rng);

struct GoldenCheck {
    std::string name;
    double got = 0.0, want = 0.0, tol = 0.0;
    bool pass = false;
};

/// recompute the blessed constants and compare against the goldens file
std::vector<GoldenCheck> check_goldens(const std::string& csv_path);

extern const char* const kVersion;

}  // namespace vp1d

#endif
