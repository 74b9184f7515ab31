#include "vp1d/steady_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vp1d/errors.hpp"
#include "vp1d/gauss.hpp"

namespace vp1d {

namespace {

constexpr double K = five_sqrt2_pi;

// f1 radicand divided by z, with ((c-t)^4 - c^4)/z expanded (t = eps z):
// R(z)/z = 2 + (K/32) eps (-4c^3 + 6c^2 t - 4c t^2 + t^3)
double f1_radicand_over_z(double z, double c, double eps) {
    const double t = eps * z;
    return 2.0 + (K / 32.0) * eps * (-4.0 * c * c * c + t * (6.0 * c * c + t * (-4.0 * c + t)));
}

// f2 radicand at w = W - s^2 divided by s^2, exact because a^4 - c^4 = -64h/K:
// R2(W - s^2)/s^2 = (K/32)(4a^3 + 6a^2 s^2 + 4a s^4 + s^6)
double f2_radicand_over_s2(double s2, double a) {
    return (K / 32.0) * (4.0 * a * a * a + s2 * (6.0 * a * a + s2 * (4.0 * a + s2)));
}

// Invert the monotone cumulative map x(s) = int_0^s integ given its fine
// table; safeguarded Newton against the analytic derivative, so the result
// carries no interpolation error.
template <class F>
double invert_cumulative(const std::vector<double>& sn, const std::vector<double>& xc,
                         F&& integ, double target) {
    if (target <= 0.0) return 0.0;
    if (target >= xc.back()) return sn.back();
    std::size_t k = std::upper_bound(xc.begin(), xc.end(), target) - xc.begin();
    k = std::clamp<std::size_t>(k, 1, xc.size() - 1);
    double blo = sn[k - 1], bhi = sn[k];
    double s = blo + (bhi - blo) * (target - xc[k - 1]) /
                         std::max(1e-300, xc[k] - xc[k - 1]);
    for (int it = 0; it < 100; ++it) {
        const double fx = xc[k - 1] + gauss16(integ, sn[k - 1], s) - target;
        if (fx > 0.0)
            bhi = s;
        else
            blo = s;
        if (std::fabs(fx) < 1e-15) break;
        double next = s - fx / integ(s);
        if (!(next > blo && next < bhi)) next = 0.5 * (blo + bhi);
        if (std::fabs(next - s) < 1e-16 * (1.0 + std::fabs(s))) {
            s = next;
            break;
        }
        s = next;
    }
    return s;
}

template <class F>
void build_cumulative(F&& integrand, double smax, int panels, std::vector<double>& s_nodes,
                      std::vector<double>& x_cum) {
    s_nodes.resize(panels + 1);
    x_cum.resize(panels + 1);
    x_cum[0] = 0.0;
    for (int k = 0; k <= panels; ++k) s_nodes[k] = smax * k / panels;
    for (int k = 1; k <= panels; ++k)
        x_cum[k] = x_cum[k - 1] + gauss16(integrand, s_nodes[k - 1], s_nodes[k]);
}

}  // namespace

double f1(double h, double c, double eps) {
    if (!(h > 0.0)) throw DomainError("f1: h must be > 0");
    if (eps < 0.0) throw DomainError("f1: eps must be >= 0");
    const double smax = std::sqrt(h);
    auto integrand = [&](double s) {
        const double roz = f1_radicand_over_z(s * s, c, eps);
        if (roz <= 0.0) throw DomainError("f1: integrand nonpositive inside the interval");
        return 2.0 / std::sqrt(roz);
    };
    return gauss16_adaptive(integrand, 0.0, smax, 1e-14);
}

double f2(double h, double c, double eps) {
    if (!(h > 0.0)) throw DomainError("f2: h must be > 0");
    const double a4 = c * c * c * c - 64.0 * h / K;
    if (!(a4 > 0.0)) throw DomainError("f2: need c^4 > 64h/(5 sqrt2 pi)");
    const double a = std::pow(a4, 0.25);
    const double W = c - a;
    if (!(W > eps * h)) throw DomainError("f2: upper limit not above lower limit");
    const double smax = std::sqrt(W - eps * h);
    auto integrand = [&](double s) { return 2.0 / std::sqrt(f2_radicand_over_s2(s * s, a)); };
    return 0.5 * eps + gauss16_adaptive(integrand, 0.0, smax, 1e-14);
}

double g(double c) {
    const double ccrit = g_critical_c();
    if (!(c > ccrit)) throw DomainError("g: c must exceed (8/(5 sqrt2 pi))^{1/4}");
    const double a4 = c * c * c * c - 8.0 / K;
    const double q = 8.0 / (K * c * c * c * c);
    // Z - 1 with Z = (1-q)^{-1/4}, computed without cancellation
    const double zm1 = std::expm1(-0.25 * std::log1p(-q));
    const double smax = std::sqrt(zm1);
    auto integrand = [](double s) {
        const double s2 = s * s;
        return 2.0 / std::sqrt(4.0 + s2 * (6.0 + s2 * (4.0 + s2)));
    };
    const double I = gauss16_adaptive(integrand, 0.0, smax, 1e-14);
    return std::sqrt(128.0 / K) * std::pow(a4, -0.25) * I;
}

std::pair<double, double> solve_eps0_root() {
    double lo = g_critical_c() * (1.0 + 1e-6);
    double hi = 1e3;
    if (!(g(lo) - 1.0 > 0.0 && g(hi) - 1.0 < 0.0))
        throw BracketError("solve_eps0_root: no sign change of g - 1 on the bracket");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) - 1.0 > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {0.125, 0.5 * (lo + hi)};
}

double DeltaFamilyParams::u_half() const {
    return c - std::pow(c * c * c * c - 64.0 * h / K, 0.25);
}

DeltaFamilyParams solve_family(double eps, std::pair<double, double> seed) {
    if (!(eps > 0.0)) throw DomainError("solve_family: eps must be > 0");
    double h = seed.first, c = seed.second;

    auto residual = [&](double hh, double cc, double& r1, double& r2) {
        r1 = f1(hh, cc, eps) - 0.5;
        r2 = f2(hh, cc, eps) - 0.5;
    };

    double r1, r2;
    residual(h, c, r1, r2);
    for (int it = 0; it < 50; ++it) {
        const double nrm = std::max(std::fabs(r1), std::fabs(r2));
        if (nrm <= 1e-11) {
            if (!(h > 0.0 && c > 0.0)) throw NoConvergence("solve_family: nonpositive root");
            return {eps, h, c, r1, r2};
        }
        // centered finite-difference Jacobian
        const double dh = 1e-5 * h, dc = 1e-5 * c;
        double a1, a2, b1, b2;
        {
            double p1, p2, m1, m2;
            residual(h + dh, c, p1, p2);
            residual(h - dh, c, m1, m2);
            a1 = (p1 - m1) / (2 * dh);
            b1 = (p2 - m2) / (2 * dh);
            residual(h, c + dc, p1, p2);
            residual(h, c - dc, m1, m2);
            a2 = (p1 - m1) / (2 * dc);
            b2 = (p2 - m2) / (2 * dc);
        }
        const double det = a1 * b2 - a2 * b1;
        if (std::fabs(det) < 1e-14)
            throw NoConvergence("solve_family: singular Jacobian (try a smaller eps step)");
        const double sh = (-r1 * b2 + r2 * a2) / det;
        const double sc = (-a1 * r2 + b1 * r1) / det;

        double lam = 1.0;
        bool accepted = false;
        while (lam > 1.0 / 64.0) {
            const double ht = h + lam * sh, ct = c + lam * sc;
            double t1 = 0.0, t2 = 0.0;
            bool ok = ht > 0.0 && ct > 0.0;
            if (ok) {
                try {
                    residual(ht, ct, t1, t2);
                } catch (const DomainError&) {
                    ok = false;
                }
            }
            if (ok && std::max(std::fabs(t1), std::fabs(t2)) < nrm) {
                h = ht;
                c = ct;
                r1 = t1;
                r2 = t2;
                accepted = true;
                break;
            }
            lam *= 0.5;
        }
        if (!accepted)
            throw NoConvergence("solve_family: damping failed (try a smaller eps step)");
    }
    throw NoConvergence("solve_family: Newton did not converge in 50 iterations");
}

DeltaFamilyParams solve_family(double eps) {
    auto [h0, c0] = solve_eps0_root();
    std::pair<double, double> seed{h0, c0};
    if (eps <= 1e-6) return solve_family(eps, seed);
    double e = 1e-6;
    DeltaFamilyParams p{};
    while (true) {
        p = solve_family(e, seed);
        seed = {p.h, p.c};
        if (e >= eps) break;
        e = std::min(2.0 * e, eps);
    }
    return p;
}

SteadyStateProfile uniform_background_state(std::function<double(double)> phi, double e_max,
                                            const UniformStateOptions& opt) {
    if (!(e_max > 0.0)) throw DomainError("uniform_background_state: e_max must be > 0");
    const double vedge = std::sqrt(2.0 * e_max);
    auto dens = [&](double v) { return phi(0.5 * v * v); };
    const double m = gauss16_adaptive(dens, -vedge, vedge, 1e-14, 16);
    double scale = 1.0;
    if (std::fabs(m - 1.0) > 1e-8) {
        if (!opt.auto_normalize)
            throw NotNormalized("uniform_background_state: int phi(v^2/2) dv = " +
                                std::to_string(m));
        scale = 1.0 / m;
    }
    SteadyStateProfile prof;
    const auto base = std::move(phi);
    prof.phi = [base, scale](double e) { return scale * base(e); };
    prof.e_max = e_max;
    prof.e_min = 0.0;
    prof.phi_max = prof.phi(0.0);
    prof.v0 = vedge + opt.v0_margin;
    return prof;
}

SteadyStateProfile build_potential(const DeltaFamilyParams& p, const PhaseGrid& grid,
                                   const BuildPotentialOptions& opt) {
    const int nx = grid.nx;
    const double dx = grid.dx;
    const double eps = p.eps, h = p.h, c = p.c;
    if (nx % 2 != 0) throw ConfigError("build_potential: nx must be even (reflection)");
    const double m_real = 0.5 * eps / dx;
    const int m = static_cast<int>(std::llround(m_real));
    if (m < 1 || std::fabs(m_real - m) > 1e-9 * nx)
        throw ConfigError("build_potential: eps/2 must be an integer multiple of dx");

    const double a = std::pow(c * c * c * c - 64.0 * h / K, 0.25);
    const double W = c - a;  // U(1/2)

    std::vector<double> U(nx, 0.0);

    // region 1: [0, eps/2], U = eps s^2 with x(s) = eps int_0^s 2 dz/sqrt(R/z)
    {
        const double smax = std::sqrt(h);
        auto integ = [&](double s) {
            return 2.0 * eps / std::sqrt(f1_radicand_over_z(s * s, c, eps));
        };
        std::vector<double> sn, xc;
        build_cumulative(integ, smax, 512, sn, xc);
        if (std::fabs(xc.back() - 0.5 * eps) > 1e-8)
            throw ConsistencyError("build_potential: region-1 length mismatch " +
                                   std::to_string(xc.back() - 0.5 * eps));
        for (int i = 1; i < m; ++i) {
            const double s = invert_cumulative(sn, xc, integ, grid.x(i));
            U[i] = eps * s * s;
        }
        U[m] = eps * h;  // exact by definition of h
    }

    // region 2: (eps/2, 1/2], U = W - s^2 with G(s) = int_0^s 2 dz/sqrt(R2/s^2)
    {
        const double smax = std::sqrt(W - eps * h);
        auto integ = [&](double s) { return 2.0 / std::sqrt(f2_radicand_over_s2(s * s, a)); };
        std::vector<double> sn, xc;
        build_cumulative(integ, smax, 512, sn, xc);
        const double total = xc.back();  // = 1/2 - eps/2 up to the f2 residual
        if (std::fabs(total - (0.5 - 0.5 * eps)) > 1e-8)
            throw ConsistencyError("build_potential: region-2 length mismatch " +
                                   std::to_string(total - (0.5 - 0.5 * eps)));
        for (int i = m + 1; i < nx / 2; ++i) {
            const double target = std::clamp(0.5 * eps + total - grid.x(i), 0.0, total);
            const double s = invert_cumulative(sn, xc, integ, target);
            U[i] = W - s * s;
        }
        U[nx / 2] = W;
    }

    // reflect U(x) = U(1-x)
    for (int i = nx / 2 + 1; i < nx; ++i) U[i] = U[nx - i];

    for (int i = 0; i <= nx / 2; ++i) {
        if (U[i] < -1e-14) throw ConsistencyError("build_potential: negative U");
        if (i > 0 && U[i] < U[i - 1] - 1e-12)
            throw ConsistencyError("build_potential: U not nondecreasing on [0, 1/2]");
    }

    // discrete stationary Poisson residual away from the density jump nodes
    {
        const IonDensity ions = IonDensity::delta_desingularized(nx, eps);
        double worst = 0.0;
        for (int i = 0; i < nx; ++i) {
            const int dist = std::min(std::abs(i - m), std::abs(i - (nx - m)));
            if (dist <= 2) continue;
            const int im = wrap_index(i - 1, nx), ip = wrap_index(i + 1, nx);
            const double upp = (U[im] - 2.0 * U[i] + U[ip]) / (dx * dx);
            const double cm = c - U[i];
            const double rhs = ions.values[i] - (K / 16.0) * cm * cm * cm;
            worst = std::max(worst, std::fabs(upp - rhs));
        }
        if (worst > opt.poisson_residual_tol)
            throw ConsistencyError("build_potential: Poisson residual " + std::to_string(worst));
    }

    SteadyStateProfile prof;
    prof.phi = [c](double e) { return e < c ? std::pow(c - e, 2.5) : 0.0; };
    prof.e_max = c;
    prof.e_min = 0.0;  // U(0) = 0 is the minimum
    prof.phi_max = std::pow(c, 2.5);
    prof.v0 = std::sqrt(2.0 * c) + opt.v0_margin;
    prof.u_star = std::move(U);
    prof.nx = nx;
    return prof;
}

DistributionFunction generate_f(const SteadyStateProfile& profile, const PhaseGrid& grid,
                                bool normalize_discrete) {
    if (grid.v_max < profile.v0)
        throw BandTooNarrow("generate_f: v_max < profile v0");
    if (!profile.u_star.empty() && profile.nx != grid.nx)
        throw ConfigError("generate_f: profile potential built on a different spatial grid");
    DistributionFunction f(grid);
    for (int i = 0; i < grid.nx; ++i) {
        const double u = profile.u_at(i);
        for (int j = 0; j < grid.nv; ++j) {
            const double vj = grid.v(j);
            f.at(i, j) = profile.phi(0.5 * vj * vj + u);
        }
    }
    if (normalize_discrete) {
        const double m = mass(f);
        if (!(m > 0.0)) throw NumericalError("generate_f: nonpositive mass");
        for (double& v : f.values) v /= m;
    }
    return f;
}

}  // namespace vp1d
