#include "vp1d/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vp1d/errors.hpp"
#include "vp1d/gauss.hpp"

namespace vp1d {

double kinetic_energy(const DistributionFunction& f) {
    return integrate_phase(f, [](double, double v) { return 0.5 * v * v; });
}

double field_energy(const std::vector<double>& E) {
    double s = 0.0;
    for (double e : E) s += e * e;
    return 0.5 * s / E.size();
}

double energy(const DistributionFunction& f, const FieldState& field) {
    return kinetic_energy(f) + field_energy(field.E);
}

double CasimirKernel::lambda(double zeta) const {
    if (zeta <= 0.0) return 0.0;  // clip undershoots
    if (zeta >= phi_max) {
        const double d = zeta - phi_max;
        return lam0 + lam1 * d + 0.5 * lam2 * d * d;
    }
    const int n = static_cast<int>(table.size()) - 1;
    const double u = std::pow(zeta / phi_max, 0.2);
    double p = u * n;
    int ib = std::clamp(static_cast<int>(std::floor(p)) - 1, 0, n - 3);
    const auto w = lagrange4_weights(p - ib);
    return w[0] * table[ib] + w[1] * table[ib + 1] + w[2] * table[ib + 2] + w[3] * table[ib + 3];
}

double CasimirKernel::lambda_prime(double zeta) const {
    if (zeta >= phi_max) return lam1 + lam2 * (zeta - phi_max);
    if (zeta <= 0.0) return -e_max;  // -phi^{-1}(0+)
    const double d = 1e-7 * phi_max;
    const double lo = std::max(0.0, zeta - d), hi = std::min(phi_max, zeta + d);
    return (lambda(hi) - lambda(lo)) / (hi - lo);
}

CasimirKernel build_kernel(const SteadyStateProfile& profile, double c1) {
    if (c1 < profile.phi_max)
        throw ConfigError("build_kernel: c1 must be >= phi_max");
    const double e_min = profile.e_min, e_max = profile.e_max;
    const auto& phi = profile.phi;

    // strict monotonicity of the sampled profile
    {
        const int ms = 2000;
        double prev = phi(e_min);
        for (int k = 1; k <= ms; ++k) {
            const double e = e_min + (e_max - e_min) * k / ms;
            const double cur = phi(e);
            if (!(cur < prev))
                throw NotMonotone("build_kernel: phi not strictly decreasing at E = " +
                                  std::to_string(e));
            prev = cur;
        }
    }

    const double phi_max = phi(e_min);
    auto phi_inv = [&](double eta) {
        // phi decreasing: phi(lo) >= eta >= phi(hi)
        double lo = e_min, hi = e_max;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (phi(mid) > eta)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    CasimirKernel k;
    k.phi_max = phi_max;
    k.e_min = e_min;
    k.e_max = e_max;
    k.c1 = c1;

    // Lambda on the graded grid zeta = phi_max u^5 via
    // Lambda(z) = -q z - int_q^{e_max} phi,  q = phi^{-1}(z)
    const int n = 2000;
    k.table.assign(n + 1, 0.0);
    double q_prev = e_max;
    double psi = 0.0;  // int_{q}^{e_max} phi, accumulated as q decreases
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double zeta = phi_max * u * u * u * u * u;
        const double q = i == n ? e_min : phi_inv(zeta);
        psi += gauss16(phi, q, q_prev);
        k.table[i] = -q * zeta - psi;
        q_prev = q;
    }

    k.lam0 = k.table[n];
    k.lam1 = -e_min;  // Lambda'(phi_max) = -phi^{-1}(phi_max)
    // Lambda''(phi_max) = -1/phi'(e_min), one-sided second-order difference
    {
        const double d = 1e-6 * (e_max - e_min);
        const double der =
            (-3.0 * phi(e_min) + 4.0 * phi(e_min + d) - phi(e_min + 2.0 * d)) / (2.0 * d);
        if (!(der < 0.0)) throw NotMonotone("build_kernel: phi'(e_min) not negative");
        k.lam2 = -1.0 / der;
    }

    double L = std::max(std::fabs(e_min), std::fabs(e_max));
    if (c1 > phi_max) L = std::max(L, std::fabs(-e_min + k.lam2 * (c1 - phi_max)));
    k.lipschitz_l = L;
    return k;
}

double casimir_functional(const DistributionFunction& f, const CasimirKernel& kernel) {
    const PhaseGrid& g = f.grid;
    double fmax = 0.0;
    for (double v : f.values) fmax = std::max(fmax, v);
    if (fmax > kernel.c1)
        throw RangeExceeded("casimir_functional: max f = " + std::to_string(fmax) +
                            " exceeds kernel bound c1 = " + std::to_string(kernel.c1));
    double total = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.nv; ++j) row += g.wv(j) * kernel.lambda(f.at(i, j));
        total += row;
    }
    return total * g.dx;
}

ReferenceState make_reference(const SteadyStateProfile& profile, const PhaseGrid& grid,
                              const IonDensity& ions, bool normalize_discrete) {
    ReferenceState ref;
    ref.f_star = generate_f(profile, grid, normalize_discrete);
    ref.fields = solve_fields(ref.f_star, ions);
    ref.h_star = energy(ref.f_star, ref.fields);
    ref.v0 = profile.v0;
    return ref;
}

DistanceRecord distances(const DistributionFunction& f, const FieldState& field,
                         const ReferenceState& ref) {
    const PhaseGrid& g = f.grid;
    if (!(g == ref.f_star.grid)) throw ConfigError("distances: grid mismatch");
    DistanceRecord d;
    double l2sq = 0.0, wl1 = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            const double diff = f.at(i, j) - ref.f_star.at(i, j);
            const double vj = g.v(j);
            const double w = g.wv(j);
            l2sq += w * diff * diff;
            wl1 += w * (1.0 + vj * vj) * std::fabs(diff);
        }
    }
    d.l2 = std::sqrt(l2sq * g.dx);
    d.weighted_l1 = wl1 * g.dx;
    double du = 0.0, de = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        du += std::fabs(field.U[i] - ref.fields.U[i]);
        de += std::fabs(field.E[i] - ref.fields.E[i]);
    }
    d.w11 = 2.0 * ref.v0 * (du + de) * g.dx;
    return d;
}

DiagnosticSeries stability_report(const std::vector<double>& times,
                                  const std::vector<DistributionFunction>& snapshots,
                                  const IonDensity& ions, const ReferenceState& ref,
                                  const CasimirKernel& kernel, const StabilityOptions& opt) {
    if (times.size() != snapshots.size())
        throw ConfigError("stability_report: times/snapshots mismatch");
    DiagnosticSeries s;
    for (const char* name :
         {"H", "C", "H_C", "l2", "weighted_l1", "w11", "max_abs_E", "rhs_bound"})
        s.add_channel(name);

    const double v0 = ref.v0, u0 = opt.u0;
    const double c2 = prop41_c2(kernel);

    double wl1_0 = 0.0;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const FieldState field = solve_fields(snapshots[k], ions);
        const double H = energy(snapshots[k], field);
        const double C = casimir_functional(snapshots[k], kernel);
        const DistanceRecord d = distances(snapshots[k], field, ref);
        if (k == 0) wl1_0 = d.weighted_l1;
        double rhs = 0.0;
        if (opt.c_tilde > 0.0) {
            rhs = 4.0 * v0 * std::sqrt(2.0 * u0) * std::sqrt(c2 / opt.c_tilde * wl1_0) +
                  8.0 * v0 / (u0 * u0) * (2.0 * ref.h_star + 4.0) +
                  8.0 * v0 / (u0 * u0) * wl1_0;
        }
        s.push_sample(times[k],
                      {H, C, H + C, d.l2, d.weighted_l1, d.w11, field.max_abs_e(), rhs});
    }
    return s;
}

}  // namespace vp1d
