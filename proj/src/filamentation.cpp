#include "vp1d/filamentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vp1d/errors.hpp"

namespace vp1d {

TracerMesh TracerMesh::identity(int mx, int mv, double v0) {
    if (mx < 4 || mv < 4) throw ConfigError("TracerMesh: mx and mv must be >= 4");
    if (!(v0 > 0.0)) throw ConfigError("TracerMesh: v0 must be > 0");
    TracerMesh m;
    m.mx = mx;
    m.mv = mv;
    m.v0 = v0;
    const std::size_t n = static_cast<std::size_t>(mx) * mv;
    m.cloud.x.resize(n);
    m.cloud.v.resize(n);
    const double dv0 = 2.0 * v0 / (mv - 1);
    for (int a = 0; a < mx; ++a) {
        for (int b = 0; b < mv; ++b) {
            const std::size_t k = static_cast<std::size_t>(a) * mv + b;
            m.cloud.x[k] = static_cast<double>(a) / mx;
            m.cloud.v[k] = -v0 + b * dv0;
        }
    }
    m.cloud.x0 = m.cloud.x;
    m.cloud.v0 = m.cloud.v;
    return m;
}

double flow_gradient_l1(const TracerMesh& mesh) {
    const int mx = mesh.mx, mv = mesh.mv;
    const double dx0 = 1.0 / mx;
    const double dv0 = 2.0 * mesh.v0 / (mv - 1);
    const auto& X = mesh.cloud.x;
    const auto& V = mesh.cloud.v;
    auto idx = [mv](int a, int b) { return static_cast<std::size_t>(a) * mv + b; };

    double total = 0.0;
    for (int a = 0; a < mx; ++a) {
        const int ar = (a + 1) % mx, al = (a + mx - 1) % mx;
        const double liftr = a + 1 == mx ? 1.0 : 0.0;  // wrapped neighbor lives one period up
        const double liftl = a == 0 ? -1.0 : 0.0;
        for (int b = 0; b < mv; ++b) {
            const std::size_t k = idx(a, b);
            // degeneracy guard against collapsed mesh cells
            if (std::fabs(X[idx(ar, b)] + liftr - X[k]) + std::fabs(V[idx(ar, b)] - V[k]) <
                1e-12 * dx0)
                throw MeshDegenerate("flow_gradient_l1: neighboring tracers coincide");

            const double dXdx = (X[idx(ar, b)] + liftr - X[idx(al, b)] - liftl) / (2.0 * dx0);
            const double dVdx = (V[idx(ar, b)] - V[idx(al, b)]) / (2.0 * dx0);
            double dXdv, dVdv;
            if (b == 0) {
                dXdv = (X[idx(a, 1)] - X[idx(a, 0)]) / dv0;
                dVdv = (V[idx(a, 1)] - V[idx(a, 0)]) / dv0;
            } else if (b == mv - 1) {
                dXdv = (X[k] - X[idx(a, b - 1)]) / dv0;
                dVdv = (V[k] - V[idx(a, b - 1)]) / dv0;
            } else {
                dXdv = (X[idx(a, b + 1)] - X[idx(a, b - 1)]) / (2.0 * dv0);
                dVdv = (V[idx(a, b + 1)] - V[idx(a, b - 1)]) / (2.0 * dv0);
            }
            const double wv = (b == 0 || b == mv - 1) ? 0.5 * dv0 : dv0;
            total += wv * dx0 *
                     (std::fabs(dXdx) + std::fabs(dXdv) + std::fabs(dVdx) + std::fabs(dVdv));
        }
    }
    return total;
}

namespace {

double diameter_exact(const std::vector<double>& px, const std::vector<double>& pv) {
    double best = 0.0;
    const std::size_t n = px.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = px[i] - px[j], dv = pv[i] - pv[j];
            best = std::max(best, dx * dx + dv * dv);
        }
    return std::sqrt(best);
}

struct Pt {
    double x, y;
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain + brute force over hull vertices (hull is small)
double diameter_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;
    std::vector<Pt> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    double best = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            const double dx = hull[i].x - hull[j].x, dy = hull[i].y - hull[j].y;
            best = std::max(best, dx * dx + dy * dy);
        }
    return std::sqrt(best);
}

}  // namespace

double lifted_diameter(const TracerCloud& cloud, const std::vector<int>& subset) {
    if (subset.empty()) throw ConfigError("lifted_diameter: empty subset");
    if (subset.size() == 1) return 0.0;
    if (subset.size() <= 4096) {
        std::vector<double> px, pv;
        px.reserve(subset.size());
        pv.reserve(subset.size());
        for (int id : subset) {
            px.push_back(cloud.x[id]);
            pv.push_back(cloud.v[id]);
        }
        return diameter_exact(px, pv);
    }
    std::vector<Pt> pts;
    pts.reserve(subset.size());
    for (int id : subset) pts.push_back({cloud.x[id], cloud.v[id]});
    return diameter_hull(std::move(pts));
}

SeriesFit fit_line(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                   double t_hi) {
    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= t_lo - 1e-12 && t[k] <= t_hi + 1e-12) {
            ts.push_back(t[k]);
            ys.push_back(y[k]);
        }
    const std::size_t n = ts.size();
    if (n < 5) throw WindowTooShort("fit_line: fewer than 5 samples in the fit window");
    double st = 0, sy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        st += ts[k];
        sy += ys[k];
    }
    const double tm = st / n, ym = sy / n;
    double stt = 0, sty = 0, syy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = ts[k] - tm, dy = ys[k] - ym;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    SeriesFit fit;
    if (syy < 1e-30) {  // constant series: slope 0, r^2 undefined
        fit.slope = 0.0;
        fit.intercept = ym;
        fit.r2 = 0.0;
        fit.degenerate = true;
        return fit;
    }
    fit.slope = sty / stt;
    fit.intercept = ym - fit.slope * tm;
    double ssres = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = ys[k] - (fit.intercept + fit.slope * ts[k]);
        ssres += r * r;
    }
    fit.r2 = 1.0 - ssres / syy;
    return fit;
}

TwistReport twist_report(const DiagnosticSeries& series, double window_lo, double window_hi) {
    TwistReport rep;
    rep.times = series.times;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    auto grab = [&](const char* name, std::vector<double>& dst, SeriesFit& fit) {
        const int c = series.index_of(name);
        if (c < 0) return;
        dst = series.channels[c];
        fit = fit_line(series.times, dst, window_lo, window_hi);
    };
    grab("grad_f_l1", rep.grad_f_l1, rep.fit_grad_f);
    grab("grad_flow_l1", rep.grad_flow_l1, rep.fit_flow);
    grab("lifted_diameter", rep.lifted_diam, rep.fit_diam);
    return rep;
}

void TwistReport::write_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "t";
    if (!grad_f_l1.empty()) out << ",grad_f_l1";
    if (!grad_flow_l1.empty()) out << ",grad_flow_l1";
    if (!lifted_diam.empty()) out << ",lifted_diameter";
    out << "\n";
    char buf[64];
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", times[k]);
        out << buf;
        auto col = [&](const std::vector<double>& v) {
            std::snprintf(buf, sizeof buf, ",%.17g", v[k]);
            out << buf;
        };
        if (!grad_f_l1.empty()) col(grad_f_l1);
        if (!grad_flow_l1.empty()) col(grad_flow_l1);
        if (!lifted_diam.empty()) col(lifted_diam);
        out << "\n";
    }
}

std::string TwistReport::summary() const {
    char buf[256];
    std::string s;
    std::snprintf(buf, sizeof buf, "fit window: [%g, %g]\n", window_lo, window_hi);
    s += buf;
    auto line = [&](const char* name, const SeriesFit& f, bool present) {
        if (!present) return;
        if (f.degenerate)
            std::snprintf(buf, sizeof buf, "%-16s slope=%.6g  (degenerate: constant series)\n",
                          name, f.slope);
        else
            std::snprintf(buf, sizeof buf, "%-16s slope=%.6g  intercept=%.6g  r2=%.6f\n", name,
                          f.slope, f.intercept, f.r2);
        s += buf;
    };
    line("grad_f_l1", fit_grad_f, !grad_f_l1.empty());
    line("grad_flow_l1", fit_flow, !grad_flow_l1.empty());
    line("lifted_diameter", fit_diam, !lifted_diam.empty());
    return s;
}

}  // namespace vp1d
