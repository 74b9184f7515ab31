#include "vp1d/vlasov_solver.hpp"

#include <algorithm>
#include <cmath>

#include "vp1d/errors.hpp"
#include "vp1d/filamentation.hpp"

namespace vp1d {

void SolverConfig::validate(const PhaseGrid& g) const {
    if (!(dt > 0.0)) throw ConfigError("SolverConfig: dt must be > 0");
    if (t_end < 0.0) throw ConfigError("SolverConfig: t_end must be >= 0");
    if (g.v_max * dt > max_displacement + 1e-12)
        throw CflViolation("SolverConfig: dt*v_max = " + std::to_string(g.v_max * dt) +
                           " exceeds displacement bound " + std::to_string(max_displacement));
}

double SolverConfig::default_dt(const PhaseGrid& g, double max_abs_e) {
    return 0.5 * std::min(g.dx / g.v_max, g.dv / max_abs_e);
}

namespace {

// out[i] = sum_k w_k row[wrap(i + m - 1 + k)] for the constant index shift
// s = m + a; periodic. Exact in the sense that the weights are the same
// cubic Lagrange weights interpolate() uses.
void shift_rows_periodic(const double* in, double* out, int n, double s) {
    const double m_f = std::floor(s);
    int m = static_cast<int>(m_f);
    const auto w = lagrange4_weights(s - m_f + 1.0);
    for (int i = 0; i < n; ++i) {
        const int b = i + m - 1;
        out[i] = w[0] * in[wrap_index(b, n)] + w[1] * in[wrap_index(b + 1, n)] +
                 w[2] * in[wrap_index(b + 2, n)] + w[3] * in[wrap_index(b + 3, n)];
    }
}

// column version: clamped-to-zero outside [0, n-1], stencil shifted at edges
void shift_column_band(const double* in, double* out, int n, double s) {
    for (int j = 0; j < n; ++j) {
        const double p = j + s;
        if (p < 0.0 || p > n - 1.0) {
            out[j] = 0.0;
            continue;
        }
        int jc = static_cast<int>(std::floor(p));
        const int jb = std::clamp(jc - 1, 0, n - 4);
        const auto w = lagrange4_weights(p - jb);
        out[j] = w[0] * in[jb] + w[1] * in[jb + 1] + w[2] * in[jb + 2] + w[3] * in[jb + 3];
    }
}

// half x-advection: f(x,v) <- f(x - v dt, v), per-row constant shift
void advect_x(const DistributionFunction& f, double dt, DistributionFunction& out) {
    const PhaseGrid& g = f.grid;
    std::vector<double> row(g.nx), res(g.nx);
    for (int j = 0; j < g.nv; ++j) {
        const double s = -g.v(j) * dt / g.dx;  // foot index offset
        for (int i = 0; i < g.nx; ++i) row[i] = f.values[static_cast<std::size_t>(i) * g.nv + j];
        shift_rows_periodic(row.data(), res.data(), g.nx, s);
        for (int i = 0; i < g.nx; ++i) out.values[static_cast<std::size_t>(i) * g.nv + j] = res[i];
    }
}

// full v-kick: f(x,v) <- f(x, v + E(x) dt), per-column constant shift
void kick_v(const DistributionFunction& f, const std::vector<double>& E, double dt,
            DistributionFunction& out) {
    const PhaseGrid& g = f.grid;
    std::vector<double> res(g.nv);
    for (int i = 0; i < g.nx; ++i) {
        const double s = E[i] * dt / g.dv;
        const double* col = &f.values[static_cast<std::size_t>(i) * g.nv];
        shift_column_band(col, res.data(), g.nv, s);
        std::copy(res.begin(), res.end(), &out.values[static_cast<std::size_t>(i) * g.nv]);
    }
}

}  // namespace

DistributionFunction step(const DistributionFunction& f, const IonDensity& ions,
                          const SolverConfig& cfg, std::vector<double>* field_out) {
    cfg.validate(f.grid);
    DistributionFunction a(f.grid), b(f.grid);
    advect_x(f, 0.5 * cfg.dt, a);
    const std::vector<double> rho = electron_density(a);
    const std::vector<double> E = electric_field(ions, rho);
    double emax = 0.0;
    for (double e : E) emax = std::max(emax, std::fabs(e));
    if (emax * cfg.dt > cfg.max_displacement * 2.0 * f.grid.v_max)
        throw CflViolation("step: velocity displacement exceeds bound, max|E| = " +
                           std::to_string(emax));
    kick_v(a, E, cfg.dt, b);
    advect_x(b, 0.5 * cfg.dt, a);
    if (field_out) *field_out = E;
    return a;
}

TracerCloud advance_tracers(TracerCloud cloud, const FieldProvider& field, double dt) {
    const double t_mid = cloud.t + 0.5 * dt;
    const std::size_t n = cloud.size();
    for (std::size_t k = 0; k < n; ++k) {
        double x = cloud.x[k] + 0.5 * dt * cloud.v[k];
        const double xw = x - std::floor(x);  // wrapped copy for the field only
        cloud.v[k] -= dt * field(xw, t_mid);
        cloud.x[k] = x + 0.5 * dt * cloud.v[k];
    }
    cloud.t += dt;
    return cloud;
}

EvolveResult evolve(const DistributionFunction& f0, const IonDensity& ions,
                    const SolverConfig& cfg, const EvolveOptions& opt) {
    cfg.validate(f0.grid);
    const long n_steps = std::llround(cfg.t_end / cfg.dt);
    if (std::fabs(n_steps * cfg.dt - cfg.t_end) > 1e-9)
        throw ConfigError("evolve: t_end must be an integer number of steps");
    const long sample_stride =
        std::max<long>(1, std::llround(opt.sample_dt / cfg.dt));
    const long snap_stride =
        opt.snapshot_dt > 0.0 ? std::max<long>(1, std::llround(opt.snapshot_dt / cfg.dt)) : 0;

    EvolveResult res;
    for (const auto& ob : opt.observables) res.series.add_channel(ob.name);
    for (const auto& ob : opt.mesh_observables) res.series.add_channel(ob.name);

    auto record = [&](double t, const DistributionFunction& f) {
        std::vector<double> vals;
        vals.reserve(opt.observables.size() + opt.mesh_observables.size());
        if (!opt.observables.empty()) {
            const FieldState fs = solve_fields(f, ions);
            for (const auto& ob : opt.observables) vals.push_back(ob.fn(t, f, fs));
        }
        for (const auto& ob : opt.mesh_observables) vals.push_back(ob.fn(*opt.tracers));
        res.series.push_sample(t, vals);
    };

    DistributionFunction f = f0;
    record(0.0, f);
    res.snap_times.push_back(0.0);
    res.snapshots.push_back(f);

    std::vector<double> e_half;
    for (long k = 1; k <= n_steps; ++k) {
        f = step(f, ions, cfg, &e_half);
        if (opt.tracers) {
            const FieldProvider prov = [&e_half](double x, double) {
                return interp_spatial(e_half, x);
            };
            opt.tracers->cloud = advance_tracers(std::move(opt.tracers->cloud), prov, cfg.dt);
        }
        const double t = k * cfg.dt;
        const bool last = k == n_steps;
        if (last || k % sample_stride == 0) record(t, f);
        if (last || (snap_stride > 0 && k % snap_stride == 0)) {
            if (res.snap_times.empty() || res.snap_times.back() != t) {
                res.snap_times.push_back(t);
                res.snapshots.push_back(f);
            }
        }
    }
    return res;
}

}  // namespace vp1d
