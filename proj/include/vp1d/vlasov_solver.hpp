#ifndef VP1D_VLASOV_SOLVER_HPP
#define VP1D_VLASOV_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "vp1d/diagnostics.hpp"
#include "vp1d/field_solver.hpp"
#include "vp1d/phase_grid.hpp"

namespace vp1d {

/// Strang-split backward semi-Lagrangian stepping (Cheng-Knorr): half
/// x-advection, field solve at the half-time density, full v-kick, half
/// x-advection. Unconditionally stable; dt is limited by a displacement
/// bound, not a stability bound.
struct SolverConfig {
    double dt = 0.01;
    double t_end = 10.0;
    double max_displacement = 0.5;  // per substep, as a fraction of the domain

    void validate(const PhaseGrid& g) const;
    static double default_dt(const PhaseGrid& g, double max_abs_e = 2.0);
};

/// one dt of Strang-split semi-Lagrangian transport; field_out (optional)
/// receives the half-time field used for the kick
DistributionFunction step(const DistributionFunction& f, const IonDensity& ions,
                          const SolverConfig& cfg, std::vector<double>* field_out = nullptr);

/// Labeled phase-space points carrying their lift to the universal cover
/// (x never wrapped). Realizes the flow map.
struct TracerCloud {
    double t = 0.0;
    std::vector<double> x;   // lifted
    std::vector<double> v;
    std::vector<double> x0;  // initial positions
    std::vector<double> v0;
    std::size_t size() const { return x.size(); }
};

/// E(x wrapped, t); must cover the requested times
using FieldProvider = std::function<double(double x, double t)>;

/// symplectic drift-kick-drift update with the field sampled at the midpoint
/// time; exact for E = 0 and constant E at any dt
TracerCloud advance_tracers(TracerCloud cloud, const FieldProvider& field, double dt);

struct Observable {
    std::string name;
    std::function<double(double t, const DistributionFunction&, const FieldState&)> fn;
};

struct TracerMesh;  // filamentation.hpp

struct MeshObservable {
    std::string name;
    std::function<double(const TracerMesh&)> fn;
};

struct EvolveOptions {
    double sample_dt = 0.1;    // diagnostics cadence
    double snapshot_dt = 1.0;  // snapshot cadence; <= 0 keeps only t=0 and t_end
    std::vector<Observable> observables;
    TracerMesh* tracers = nullptr;  // co-advected with the half-time field
    std::vector<MeshObservable> mesh_observables;
};

struct EvolveResult {
    std::vector<double> snap_times;
    std::vector<DistributionFunction> snapshots;
    DiagnosticSeries series;
};

/// deterministic fixed-step evolution; snapshots and diagnostics at the
/// configured cadences (always includes t=0 and t_end)
EvolveResult evolve(const DistributionFunction& f0, const IonDensity& ions,
                    const SolverConfig& cfg, const EvolveOptions& opt = {});

}  // namespace vp1d

#endif
