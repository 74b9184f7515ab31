#ifndef VP1D_FILAMENTATION_HPP
#define VP1D_FILAMENTATION_HPP

#include <string>
#include <vector>

#include "vp1d/diagnostics.hpp"
#include "vp1d/vlasov_solver.hpp"

namespace vp1d {

/// Tracer cloud organized as a regular mesh over T x [-v0, v0], initialized
/// as the identity grid at t = 0; the x lift is kept on the universal cover.
struct TracerMesh {
    int mx = 0, mv = 0;
    double v0 = 0.0;
    TracerCloud cloud;  // index a*mv + b

    static TracerMesh identity(int mx, int mv, double v0);
};

/// L^1 of the entrywise-absolute flow-map Jacobian over the band, by finite
/// differences of the lifted tracer positions w.r.t. their initial positions
/// (periodic in x0, one-sided at the v0 band edges). Identity flow gives
/// 2*(2 v0); pure shear gives (2 + t)*(2 v0) exactly.
double flow_gradient_l1(const TracerMesh& mesh);

/// max pairwise Euclidean distance of the lifted positions of the subset;
/// exact for <= 4096 points, convex-hull + rotating calipers above that
double lifted_diameter(const TracerCloud& cloud, const std::vector<int>& subset);

struct SeriesFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool degenerate = false;  // constant series: r^2 undefined
};

/// least squares on the samples with t in [t_lo, t_hi]; throws
/// WindowTooShort if fewer than 5 samples fall inside
SeriesFit fit_line(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                   double t_hi);

struct TwistReport {
    std::vector<double> times;
    std::vector<double> grad_f_l1;
    std::vector<double> grad_flow_l1;
    std::vector<double> lifted_diam;
    SeriesFit fit_grad_f, fit_flow, fit_diam;
    double window_lo = 0.0, window_hi = 0.0;

    void write_csv(const std::string& path) const;
    std::string summary() const;
};

/// aggregate the named channels ("grad_f_l1", "grad_flow_l1",
/// "lifted_diameter"; missing ones are skipped) and fit each on the window
TwistReport twist_report(const DiagnosticSeries& series, double window_lo, double window_hi);

}  // namespace vp1d

#endif
