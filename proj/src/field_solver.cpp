#include "vp1d/field_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vp1d/errors.hpp"

namespace vp1d {

IonDensity IonDensity::uniform(int nx) {
    IonDensity d;
    d.kind = Kind::uniform;
    d.values.assign(nx, 1.0);
    return d;
}

IonDensity IonDensity::delta_desingularized(int nx, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("delta_desingularized: eps must be in (0,1)");
    const double dx = 1.0 / nx;
    const double m_real = 0.5 * eps / dx;
    const int m = static_cast<int>(std::llround(m_real));
    if (m < 1 || std::fabs(m_real - m) > 1e-9 * nx)
        throw ConfigError("delta_desingularized: eps/2 must be an integer multiple of dx");
    if (2 * m >= nx) throw ConfigError("delta_desingularized: eps too large for grid");

    IonDensity d;
    d.kind = Kind::delta_desingularized;
    d.eps = eps;
    d.values.assign(nx, 0.0);
    const double hi = 1.0 / eps;
    for (int k = 0; k < m; ++k) d.values[k] = hi;
    d.values[m] = 0.5 * hi;  // jump node at eps/2
    d.values[nx - m] = 0.5 * hi;
    for (int k = nx - m + 1; k < nx; ++k) d.values[k] = hi;
    return d;
}

IonDensity IonDensity::tabulated(std::vector<double> vals) {
    const int nx = static_cast<int>(vals.size());
    if (nx < 4) throw ConfigError("tabulated ion density: too few nodes");
    for (double v : vals)
        if (v < 0.0) throw ConfigError("tabulated ion density: negative value");
    const double m = std::accumulate(vals.begin(), vals.end(), 0.0) / nx;
    if (std::fabs(m - 1.0) > 1e-12)
        throw ConfigError("tabulated ion density: mass must be 1 within 1e-12");
    IonDensity d;
    d.kind = Kind::tabulated;
    d.values = std::move(vals);
    return d;
}

double IonDensity::grid_mass() const {
    return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

double FieldState::max_abs_e() const {
    double m = 0.0;
    for (double e : E) m = std::max(m, std::fabs(e));
    return m;
}

std::vector<double> electron_density(const DistributionFunction& f) {
    const PhaseGrid& g = f.grid;
    std::vector<double> rho(g.nx, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        const double* col = &f.values[static_cast<std::size_t>(i) * g.nv];
        double s = 0.5 * (col[0] + col[g.nv - 1]);
        for (int j = 1; j < g.nv - 1; ++j) s += col[j];
        rho[i] = s * g.dv;
    }
    return rho;
}

namespace detail {

std::vector<double> kernel_sum_literal(const std::vector<double>& sigma) {
    const int n = static_cast<int>(sigma.size());
    const double dx = 1.0 / n;
    std::vector<double> E(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = i * dx;
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double yk = k * dx;
            double K;
            if (k < i)
                K = yk;
            else if (k > i)
                K = yk - 1.0;
            else
                K = xi - 0.5;  // diagonal midvalue
            s += K * sigma[k];
        }
        E[i] = s * dx;
    }
    return E;
}

std::vector<double> kernel_sum_fast(const std::vector<double>& sigma) {
    const int n = static_cast<int>(sigma.size());
    const double dx = 1.0 / n;
    // E_i = dx * (sum_k y_k s_k - s_i/2 - sum_{k>i} s_k); identical arithmetic
    // to the literal kernel sum, reorganized with suffix sums.
    double m1 = 0.0;
    for (int k = 0; k < n; ++k) m1 += (k * dx) * sigma[k];
    std::vector<double> E(n);
    double tail = 0.0;  // sum_{k>i} sigma_k, built backwards
    for (int i = n - 1; i >= 0; --i) {
        E[i] = dx * (m1 - 0.5 * sigma[i] - tail);
        tail += sigma[i];
    }
    return E;
}

}  // namespace detail

std::vector<double> electric_field(const IonDensity& ions, const std::vector<double>& rho_e) {
    const int n = static_cast<int>(rho_e.size());
    if (static_cast<int>(ions.values.size()) != n)
        throw ConfigError("electric_field: grid mismatch between ion and electron densities");
    const double dx = 1.0 / n;

    double mass_i = 0.0, mass_e = 0.0;
    for (int k = 0; k < n; ++k) {
        mass_i += ions.values[k];
        mass_e += rho_e[k];
    }
    mass_i *= dx;
    mass_e *= dx;
    if (std::fabs(mass_i - mass_e) > 1e-8)
        throw NeutralityViolation("electric_field: charge imbalance " +
                                  std::to_string(mass_i - mass_e));

    std::vector<double> sigma(n);
    for (int k = 0; k < n; ++k) sigma[k] = ions.values[k] - rho_e[k];
    std::vector<double> E = detail::kernel_sum_fast(sigma);

    // Euler-Maclaurin correction for the kernel's diagonal kink:
    // E_i -= dx^2/12 * sigma'(x_i), with sigma' taken from the smooth part
    // only (piecewise-constant ion kinds contribute nothing away from their
    // jumps, and nothing sensible at them).
    const double c12 = dx * dx / 12.0;
    auto dsmooth = [&](const std::vector<double>& a, int i) {
        const int im2 = wrap_index(i - 2, n), im1 = wrap_index(i - 1, n);
        const int ip1 = wrap_index(i + 1, n), ip2 = wrap_index(i + 2, n);
        return (8.0 * (a[ip1] - a[im1]) - (a[ip2] - a[im2])) / (12.0 * dx);
    };
    const bool ion_smooth = ions.kind == IonDensity::Kind::tabulated;
    for (int i = 0; i < n; ++i) {
        double sp = -dsmooth(rho_e, i);
        if (ion_smooth) sp += dsmooth(ions.values, i);
        E[i] -= c12 * sp;
    }
    return E;
}

std::vector<double> potential(const std::vector<double>& E) {
    const int n = static_cast<int>(E.size());
    const double dx = 1.0 / n;
    double mean = 0.0;
    for (double e : E) mean += e;
    mean *= dx;
    if (std::fabs(mean) > 1e-8)
        throw NonPeriodicField("potential: int E dx = " + std::to_string(mean));

    auto dE = [&](int i) {
        const int im2 = wrap_index(i - 2, n), im1 = wrap_index(i - 1, n);
        const int ip1 = wrap_index(i + 1, n), ip2 = wrap_index(i + 2, n);
        return (8.0 * (E[ip1] - E[im1]) - (E[ip2] - E[im2])) / (12.0 * dx);
    };
    std::vector<double> U(n, 0.0);
    const double c12 = dx * dx / 12.0;
    const double dE0 = dE(0);
    double acc = 0.0;
    for (int i = 1; i < n; ++i) {
        acc += 0.5 * dx * (E[i - 1] + E[i]);
        U[i] = acc - c12 * (dE(i) - dE0);
    }
    return U;
}

FieldState solve_fields(const DistributionFunction& f, const IonDensity& ions) {
    FieldState s;
    s.rho_e = electron_density(f);
    s.E = electric_field(ions, s.rho_e);
    s.U = potential(s.E);
    return s;
}

std::vector<double> electric_field_spectral(const IonDensity& ions,
                                            const std::vector<double>& rho_e) {
    const int n = static_cast<int>(rho_e.size());
    std::vector<double> sigma(n);
    for (int k = 0; k < n; ++k) sigma[k] = ions.values[k] - rho_e[k];

    std::vector<double> in(sigma);
    const int nc = n / 2 + 1;
    fftw_complex* out = fftw_alloc_complex(nc);
    fftw_plan pf = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
    fftw_execute(pf);
    fftw_destroy_plan(pf);

    const double two_pi = 6.283185307179586476925287;
    out[0][0] = out[0][1] = 0.0;
    for (int m = 1; m < nc; ++m) {
        if (2 * m == n) {  // Nyquist: derivative inversion undefined, zero it
            out[m][0] = out[m][1] = 0.0;
            continue;
        }
        const double a = two_pi * m;
        const double re = out[m][0], im = out[m][1];
        out[m][0] = im / a;  // multiply by -i/a
        out[m][1] = -re / a;
    }
    std::vector<double> E(n);
    fftw_plan pb = fftw_plan_dft_c2r_1d(n, out, E.data(), FFTW_ESTIMATE);
    fftw_execute(pb);
    fftw_destroy_plan(pb);
    fftw_free(out);
    for (double& e : E) e /= n;
    return E;
}

double interp_spatial(const std::vector<double>& a, double x) {
    const int n = static_cast<int>(a.size());
    double p = x * n;
    p -= std::floor(p / n) * n;
    int i0 = static_cast<int>(std::floor(p));
    if (i0 >= n) i0 -= n;
    const auto w = lagrange4_weights(p - i0 + 1.0);
    double val = 0.0;
    for (int k = 0; k < 4; ++k) val += w[k] * a[wrap_index(i0 - 1 + k, n)];
    return val;
}

}  // namespace vp1d
