#pragma once

// Adaptive Gauss-Kronrod (G7/K15) panel quadrature for real- and
// complex-valued integrands on finite intervals.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dmme {

struct QuadTolerances {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;
};

namespace detail {
// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights embedded
// at the odd Kronrod points.
inline constexpr double qk_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double qk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double qk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
double quad_abs(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
        return std::abs(v);
    else
        return std::abs(static_cast<double>(v));
}

template <typename F, typename T>
void gk15_panel(F& f, double a, double b, T& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T resk = qk_wk[7] * f(c);
    T resg = qk_wg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const T f1 = f(c - h * qk_x[i]);
        const T f2 = f(c + h * qk_x[i]);
        resk = resk + qk_wk[i] * (f1 + f2);
        if (i % 2 == 1) resg = resg + qk_wg[i / 2] * (f1 + f2);
    }
    result = h * resk;
    err = quad_abs<T>(h * (resk - resg));
}
}  // namespace detail

// Returns the integral of f over [a, b]; recursively bisects panels whose
// Kronrod-Gauss defect exceeds the local share of the tolerance budget.
template <typename T = double, typename F>
T integrate(F&& f, double a, double b, const QuadTolerances& tol = {}) {
    if (a == b) return T{};
    struct Panel {
        double a, b;
        int depth;
    };
    T total{};
    double total_abs = 0.0;
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        T r{};
        double err = 0.0;
        detail::gk15_panel(f, p.a, p.b, r, err);
        const double scale = std::max(tol.abs_tol, tol.rel_tol * (total_abs + detail::quad_abs<T>(r)));
        const double local = scale * std::abs(p.b - p.a) / std::abs(b - a);
        if (err <= std::max(local, tol.abs_tol * 1e-2) || p.depth >= tol.max_depth) {
            if (p.depth >= tol.max_depth && err > 1e3 * std::max(local, tol.abs_tol))
                throw std::runtime_error("quadrature failed to converge");
            total = total + r;
            total_abs += detail::quad_abs<T>(r);
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    return total;
}

}  // namespace dmme
