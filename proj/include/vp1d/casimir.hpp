#ifndef VP1D_CASIMIR_HPP
#define VP1D_CASIMIR_HPP

#include <vector>

#include "vp1d/diagnostics.hpp"
#include "vp1d/field_solver.hpp"
#include "vp1d/phase_grid.hpp"
#include "vp1d/steady_states.hpp"

namespace vp1d {

/// Lambda(zeta) = -int_0^zeta phi^{-1}, built numerically from the profile,
/// extended quadratically above phi_max so that Lambda is C^2 on (0, inf).
/// Convex on (0, phi_max) since phi' < 0. Evaluations clip negative zeta
/// (interpolation undershoots) to 0.
struct CasimirKernel {
    double phi_max = 0.0;
    double e_min = 0.0, e_max = 0.0;
    double c1 = 0.0;          // validity bound for f
    double lipschitz_l = 0.0; // max |Lambda'| on [0, c1]
    // extension coefficients at phi_max
    double lam0 = 0.0, lam1 = 0.0, lam2 = 0.0;
    // table on the graded variable u in [0,1], zeta = phi_max * u^5
    std::vector<double> table;

    double lambda(double zeta) const;
    double lambda_prime(double zeta) const;
};

/// H(f) = int v^2/2 f dv dx + int E^2/2 dx
double kinetic_energy(const DistributionFunction& f);
double field_energy(const std::vector<double>& E);
double energy(const DistributionFunction& f, const FieldState& field);

/// numeric phi^{-1} by bisection on the profile, Lambda by the by-parts
/// identity Lambda(z) = -phi^{-1}(z) z - int_{phi^{-1}(z)}^{e_max} phi.
/// Throws NotMonotone if the sampled phi is not strictly decreasing.
CasimirKernel build_kernel(const SteadyStateProfile& profile, double c1);

/// C(f) = int int Lambda(f). Throws RangeExceeded if max f > c1.
double casimir_functional(const DistributionFunction& f, const CasimirKernel& kernel);

/// Prop n.1-style executable constant: C2 = max(1/2, 2 + L)
inline double prop41_c2(const CasimirKernel& k) {
    return k.lipschitz_l + 2.0 > 0.5 ? 2.0 + k.lipschitz_l : 0.5;
}

/// reference steady state on a grid, with its self-consistent discrete
/// fields so that distances(f*, ref) vanish to roundoff
struct ReferenceState {
    DistributionFunction f_star;
    FieldState fields;
    double h_star = 0.0;  // H(f*)
    double v0 = 0.0;
};

ReferenceState make_reference(const SteadyStateProfile& profile, const PhaseGrid& grid,
                              const IonDensity& ions, bool normalize_discrete = true);

struct DistanceRecord {
    double l2 = 0.0;          // ||f - f*||_{L^2}
    double weighted_l1 = 0.0; // int (1+v^2) |f - f*|
    double w11 = 0.0;         // 2 v0 (int|U-U*| + int|E-E*|)
};

DistanceRecord distances(const DistributionFunction& f, const FieldState& field,
                         const ReferenceState& ref);

struct StabilityOptions {
    double u0 = 4.0;       // free Chebyshev parameter of the stream bound
    double c_tilde = 0.0;  // measured coercivity estimate; 0 = unset
};

/// Per-snapshot H, C, H_C, distances, max|E| and the assembled bound-chain
/// right-hand side 4 v0 sqrt(2 u0) [(C2/c~) wl1(0)]^{1/2}
///   + (8 v0/u0^2)(2 H(f*) + 4) + (8 v0/u0^2) wl1(0).
DiagnosticSeries stability_report(const std::vector<double>& times,
                                  const std::vector<DistributionFunction>& snapshots,
                                  const IonDensity& ions, const ReferenceState& ref,
                                  const CasimirKernel& kernel, const StabilityOptions& opt);

}  // namespace vp1d

#endif
