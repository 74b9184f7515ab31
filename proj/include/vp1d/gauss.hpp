#ifndef VP1D_GAUSS_HPP
#define VP1D_GAUSS_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace vp1d {

// 16-point Gauss-Legendre nodes/weights on [-1,1] (positive half; mirror for the rest).
struct GaussLegendre16 {
    static constexpr std::array<double, 8> x = {
        0.0950125098376374401853193, 0.2816035507792589132304605,
        0.4580167776572273863424194, 0.6178762444026437484466718,
        0.7554044083550030338951012, 0.8656312023878317438804679,
        0.9445750230732325760779884, 0.9894009349916499325961542};
    static constexpr std::array<double, 8> w = {
        0.1894506104550684962853967, 0.1826034150449235888667637,
        0.1691565193950025381893121, 0.1495959888165767320815017,
        0.1246289712555338720524763, 0.0951585116824927848099251,
        0.0622535239386478928628438, 0.0271524594117540948517806};
};

// integral of f over [a,b] with a single 16-point panel
template <class F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        const double dx = h * GaussLegendre16::x[k];
        s += GaussLegendre16::w[k] * (f(c - dx) + f(c + dx));
    }
    return s * h;
}

// composite 16-point Gauss-Legendre with n equal panels
template <class F>
double gauss16_composite(F&& f, double a, double b, int panels) {
    if (b == a) return 0.0;
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) s += gauss16(f, a + p * h, a + (p + 1) * h);
    return s;
}

// Richardson-style verification: doubles panels until two refinements agree.
// Returns the finer value; *err_out (optional) receives the last difference.
template <class F>
double gauss16_adaptive(F&& f, double a, double b, double tol = 1e-13,
                        int start_panels = 8, int max_panels = 4096,
                        double* err_out = nullptr) {
    double prev = gauss16_composite(f, a, b, start_panels);
    for (int n = 2 * start_panels; n <= max_panels; n *= 2) {
        const double cur = gauss16_composite(f, a, b, n);
        const double diff = std::fabs(cur - prev);
        if (err_out) *err_out = diff;
        if (diff <= tol * (1.0 + std::fabs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace vp1d

#endif
