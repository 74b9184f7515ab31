#include "vp1d/phase_grid.hpp"

#include <algorithm>
#include <cmath>

namespace vp1d {

double mass(const DistributionFunction& f) {
    return integrate_phase(f, [](double, double) { return 1.0; });
}

double interpolate(const DistributionFunction& f, double x, double v) {
    const PhaseGrid& g = f.grid;
    if (v < -g.v_max || v > g.v_max) return 0.0;

    // x: periodic, stencil {i0-1 .. i0+2} around the cell of the wrapped query
    double px = x / g.dx;
    px -= std::floor(px / g.nx) * g.nx;  // into [0, nx)
    int i0 = static_cast<int>(std::floor(px));
    if (i0 >= g.nx) i0 -= g.nx;
    const auto wxs = lagrange4_weights(px - i0 + 1.0);

    // v: stencil clamped into the band (shifted one-sided near the edges)
    const double pv = (v + g.v_max) / g.dv;
    int jc = static_cast<int>(std::floor(pv));
    int jb = std::clamp(jc - 1, 0, g.nv - 4);
    const auto wvs = lagrange4_weights(pv - jb);

    double val = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int i = wrap_index(i0 - 1 + a, g.nx);
        const double* row = &f.values[static_cast<std::size_t>(i) * g.nv + jb];
        val += wxs[a] * (wvs[0] * row[0] + wvs[1] * row[1] + wvs[2] * row[2] + wvs[3] * row[3]);
    }
    return val;
}

double grad_l1_norm(const DistributionFunction& f, double v0) {
    const PhaseGrid& g = f.grid;
    if (!(v0 > 0.0) || v0 > g.v_max + 1e-12)
        throw DomainError("grad_l1_norm: need 0 < v0 <= v_max");

    const double inv2dx = 1.0 / (2.0 * g.dx);
    const double inv2dv = 1.0 / (2.0 * g.dv);
    double total = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        const int im = wrap_index(i - 1, g.nx), ip = wrap_index(i + 1, g.nx);
        double row = 0.0;
        for (int j = 0; j < g.nv; ++j) {
            const double vj = g.v(j);
            if (std::fabs(vj) > v0 + 1e-12) continue;
            const double fx = (f.at(ip, j) - f.at(im, j)) * inv2dx;
            double fv;
            if (j == 0)
                fv = (f.at(i, 1) - f.at(i, 0)) / g.dv;
            else if (j == g.nv - 1)
                fv = (f.at(i, j) - f.at(i, j - 1)) / g.dv;
            else
                fv = (f.at(i, j + 1) - f.at(i, j - 1)) * inv2dv;
            // trapezoid weight within the sub-band [-v0, v0]
            const bool edge = std::fabs(std::fabs(vj) - v0) <= 0.5 * g.dv;
            row += (edge ? 0.5 * g.dv : g.dv) * (std::fabs(fx) + std::fabs(fv));
        }
        total += row;
    }
    return total * g.dx;
}

}  // namespace vp1d
