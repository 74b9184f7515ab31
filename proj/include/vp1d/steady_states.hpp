#ifndef VP1D_STEADY_STATES_HPP
#define VP1D_STEADY_STATES_HPP

#include <functional>
#include <utility>
#include <vector>

#include "vp1d/field_solver.hpp"
#include "vp1d/phase_grid.hpp"

namespace vp1d {

/// Monotone energy profile phi plus its potential U*; generates the
/// stationary state f*(x,v) = phi(v^2/2 + U*(x)).
/// phi is C^1, strictly decreasing below e_max, zero at and above it.
struct SteadyStateProfile {
    std::function<double(double)> phi;
    double e_max = 0.0;    // support edge of phi
    double e_min = 0.0;    // inf_x U*
    double phi_max = 0.0;  // phi(e_min)
    double v0 = 0.0;       // supp f* inside T x [-v0, v0]
    std::vector<double> u_star;  // potential on the spatial grid; empty => 0
    int nx = 0;                  // spatial grid of u_star (0 when u_star empty)

    double u_at(int i) const { return u_star.empty() ? 0.0 : u_star[i]; }
};

struct UniformStateOptions {
    bool auto_normalize = true;
    double v0_margin = 1.0;
};

/// Uniform-ion family: U* = 0, E* = 0, f* = phi(v^2/2) with unit mass.
/// Throws NotNormalized if int phi(v^2/2) dv differs from 1 by more than
/// 1e-8 and auto_normalize is off.
SteadyStateProfile uniform_background_state(std::function<double(double)> phi, double e_max,
                                            const UniformStateOptions& opt = {});

/// Reduced equations of the delta-desingularized family, with the
/// inverse-square-root endpoint singularities removed by the substitutions
/// z = s^2 (f1), w = W - s^2 (f2), z = 1 + s^2 (g); radicands expanded so the
/// endpoint cancellations are exact.
double f1(double h, double c, double eps);
double f2(double h, double c, double eps);
double g(double c);

constexpr double five_sqrt2_pi = 22.2144146907918312351;  // 5*sqrt(2)*pi
inline double g_critical_c() { return std::pow(8.0 / five_sqrt2_pi, 0.25); }

/// eps = 0 member: h = 1/8 exactly, c0 the bisection root of g(c) = 1 on
/// [critical*(1+1e-6), 1e3] to 1e-12. Throws BracketError if no sign change.
std::pair<double, double> solve_eps0_root();

struct DeltaFamilyParams {
    double eps = 0.0;
    double h = 0.0;
    double c = 0.0;
    double r1 = 0.0;  // converged residuals f_i - 1/2
    double r2 = 0.0;
    double u_half() const;  // U(1/2) = c - (c^4 - 64h/K)^{1/4}
};

/// damped Newton on (f1 - 1/2, f2 - 1/2) with finite-difference Jacobian,
/// converged residuals <= 1e-10
DeltaFamilyParams solve_family(double eps, std::pair<double, double> seed);
/// continuation in multiplicative eps steps from the eps = 0 root
DeltaFamilyParams solve_family(double eps);

struct BuildPotentialOptions {
    double v0_margin = 1.0;
    double poisson_residual_tol = 1e-3;  // away from the density jump nodes
};

/// Construct U_eps on the grid by monotone inversion of the two quadrature
/// identities (inner region [0, eps/2], outer [eps/2, 1/2]), reflected by
/// U(x) = U(1-x). Verifies U(0)=0, U(eps/2)=eps*h, U(1/2), monotonicity, and
/// the discrete stationary Poisson residual (ConsistencyError on failure).
SteadyStateProfile build_potential(const DeltaFamilyParams& p, const PhaseGrid& grid,
                                   const BuildPotentialOptions& opt = {});

/// f*(x_i, v_j) = phi(v_j^2/2 + U*(x_i)). Throws BandTooNarrow if
/// grid.v_max < profile.v0. normalize_discrete rescales so the grid
/// quadrature mass is exactly 1 (needed for the neutrality precondition).
DistributionFunction generate_f(const SteadyStateProfile& profile, const PhaseGrid& grid,
                                bool normalize_discrete = false);

}  // namespace vp1d

#endif
