#ifndef VP1D_PHASE_GRID_HPP
#define VP1D_PHASE_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vp1d/errors.hpp"

namespace vp1d {

/// Uniform tensor grid over T x [-v_max, v_max].
/// x_i = i*dx (periodic, i in [0,nx)), v_j = -v_max + j*dv (inclusive endpoints).
/// Quadrature: periodic trapezoid (= uniform weights dx) in x, trapezoid in v.
struct PhaseGrid {
    int nx = 0;
    int nv = 0;
    double v_max = 0.0;
    double dx = 0.0;
    double dv = 0.0;

    PhaseGrid() = default;
    PhaseGrid(int nx_, int nv_, double v_max_) : nx(nx_), nv(nv_), v_max(v_max_) {
        if (nx < 4 || nv < 4) throw ConfigError("PhaseGrid: nx and nv must be >= 4");
        if (!(v_max > 0.0)) throw ConfigError("PhaseGrid: v_max must be > 0");
        dx = 1.0 / nx;
        dv = 2.0 * v_max / (nv - 1);
    }

    double x(int i) const { return i * dx; }
    double v(int j) const { return -v_max + j * dv; }
    double wx(int) const { return dx; }
    double wv(int j) const { return (j == 0 || j == nv - 1) ? 0.5 * dv : dv; }

    bool operator==(const PhaseGrid& o) const {
        return nx == o.nx && nv == o.nv && v_max == o.v_max;
    }
};

/// Scalar field on a PhaseGrid, row-major (x outer, v inner). The evolving
/// unknown. Physical states are nonnegative; the container does not police
/// that (semi-Lagrangian steps leave small undershoots, diagnostics clip).
struct DistributionFunction {
    PhaseGrid grid;
    std::vector<double> values;

    DistributionFunction() = default;
    explicit DistributionFunction(const PhaseGrid& g)
        : grid(g), values(static_cast<std::size_t>(g.nx) * g.nv, 0.0) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.nv + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.nv + j]; }

    template <class F>
    void fill(F&& fxv) {
        for (int i = 0; i < grid.nx; ++i)
            for (int j = 0; j < grid.nv; ++j) at(i, j) = fxv(grid.x(i), grid.v(j));
    }
};

// 4-point Lagrange weights for unit-spaced nodes {0,1,2,3}, query position q
// in node units. Exact for cubics; weights sum to 1.
inline std::array<double, 4> lagrange4_weights(double q) {
    const double q0 = q, q1 = q - 1.0, q2 = q - 2.0, q3 = q - 3.0;
    return {-q1 * q2 * q3 / 6.0, q0 * q2 * q3 / 2.0, -q0 * q1 * q3 / 2.0, q0 * q1 * q2 / 6.0};
}

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

/// Quadrature approximation of int_T int weight*f dv dx.
template <class W>
double integrate_phase(const DistributionFunction& f, W&& weight) {
    const PhaseGrid& g = f.grid;
    double total = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.nv; ++j) row += g.wv(j) * weight(g.x(i), g.v(j)) * f.at(i, j);
        total += row;
    }
    return total * g.dx;
}

double mass(const DistributionFunction& f);

/// Cubic (tensor 4-point Lagrange) interpolation; periodic in x, stencil
/// shifted at the v band edges, zero outside the band.
double interpolate(const DistributionFunction& f, double x, double v);

/// int_{T x [-v0,v0]} (|df/dx| + |df/dv|) dx dv, centered differences
/// (one-sided at the v band edges).
double grad_l1_norm(const DistributionFunction& f, double v0);

}  // namespace vp1d

#endif
