#ifndef VP1D_FIELD_SOLVER_HPP
#define VP1D_FIELD_SOLVER_HPP

#include <vector>

#include "vp1d/phase_grid.hpp"

namespace vp1d {

/// Fixed background charge on the spatial grid. Unit mass (discrete).
struct IonDensity {
    enum class Kind { uniform, delta_desingularized, tabulated };
    Kind kind = Kind::uniform;
    double eps = 0.0;  // delta_desingularized width
    std::vector<double> values;

    static IonDensity uniform(int nx);
    // rho_eps = 1/eps on [0,eps/2) u (1-eps/2,1]; requires eps/2 to be an
    // integer multiple of dx (the jump sits on a node, sampled at midvalue
    // 1/(2 eps) there, which makes the discrete mass exactly 1).
    static IonDensity delta_desingularized(int nx, double eps);
    static IonDensity tabulated(std::vector<double> vals);

    double grid_mass() const;
};

/// rho_e, E, U derived from f and the ion background. Gauge U(0)=0.
struct FieldState {
    std::vector<double> rho_e;
    std::vector<double> E;
    std::vector<double> U;
    double max_abs_e() const;
};

/// velocity quadrature of f at each x_i
std::vector<double> electron_density(const DistributionFunction& f);

/// E(x) = int K(x,y) [rho_ion - rho_e](y) dy on the periodic grid, so that
/// E' = rho_ion - rho_e with zero-mean E (kernel bounded by 1, |E| <= 2 for
/// unit masses). Primary path: exact reorganized trapezoid sum of the kernel
/// quadrature plus the Euler-Maclaurin correction for the kernel's diagonal
/// kink. Throws NeutralityViolation if the masses differ by more than 1e-8.
std::vector<double> electric_field(const IonDensity& ions, const std::vector<double>& rho_e);

/// U(x_i) = int_0^{x_i} E, U(0)=0, Euler-Maclaurin-corrected cumulative
/// trapezoid. Throws NonPeriodicField if int E exceeds 1e-8.
std::vector<double> potential(const std::vector<double>& E);

FieldState solve_fields(const DistributionFunction& f, const IonDensity& ions);

/// Independent cross-check path: Fourier inversion of U'' = rho_ion - rho_e
/// on the periodic grid (FFTW), E = U', zero-mean, Nyquist zeroed.
std::vector<double> electric_field_spectral(const IonDensity& ions,
                                            const std::vector<double>& rho_e);

/// periodic 4-point Lagrange interpolation of a spatial array at x (wrapped)
double interp_spatial(const std::vector<double>& a, double x);

namespace detail {
// literal O(nx^2) kernel quadrature (reference for the fast reorganized sum)
std::vector<double> kernel_sum_literal(const std::vector<double>& sigma);
// fast exact reorganization of the same trapezoid sum
std::vector<double> kernel_sum_fast(const std::vector<double>& sigma);
}  // namespace detail

}  // namespace vp1d

#endif
