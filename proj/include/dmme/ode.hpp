#pragma once

// Adaptive embedded Runge-Kutta integrator (Dormand-Prince 5(4), FSAL) with
// cubic-Hermite dense output between accepted steps.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dmme/errors.hpp"

namespace dmme {

struct OdeTolerances {
    double rtol = 1e-8;
    double atol = 1e-10;
    double max_step = 0.0;  // 0 = unrestricted
};

template <std::size_t N>
struct OdeNode {
    double t;
    std::array<double, N> y;
    std::array<double, N> dy;
};

// Piecewise cubic Hermite interpolant over the accepted steps.
template <std::size_t N>
class OdeSolution {
public:
    std::vector<OdeNode<N>> nodes;

    double t_start() const { return nodes.front().t; }
    double t_end() const { return nodes.back().t; }

    std::array<double, N> eval(double t) const { return eval_impl(t, false); }

    // Derivative of the interpolant (not the ODE right-hand side).
    std::array<double, N> eval_derivative(double t) const { return eval_impl(t, true); }

private:
    std::array<double, N> eval_impl(double t, bool deriv) const {
        const double lo = std::min(t_start(), t_end());
        const double hi = std::max(t_start(), t_end());
        const double span = hi - lo;
        if (t < lo - 1e-9 * std::max(1.0, span) || t > hi + 1e-9 * std::max(1.0, span))
            throw std::out_of_range("time outside the solution range");
        t = std::clamp(t, lo, hi);

        // Nodes are ordered in integration direction; handle both directions.
        const bool fwd = nodes.back().t >= nodes.front().t;
        std::size_t i = locate(t, fwd);
        const auto& a = nodes[i];
        const auto& b = nodes[i + 1];
        const double h = b.t - a.t;
        if (h == 0.0) return deriv ? a.dy : a.y;
        const double s = (t - a.t) / h;
        std::array<double, N> out{};
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        const double d00 = 6 * s * (s - 1) / h;
        const double d10 = (1 - s) * (1 - 3 * s);
        const double d01 = -6 * s * (s - 1) / h;
        const double d11 = s * (3 * s - 2);
        for (std::size_t k = 0; k < N; ++k) {
            if (!deriv)
                out[k] = h00 * a.y[k] + h10 * h * a.dy[k] + h01 * b.y[k] + h11 * h * b.dy[k];
            else
                out[k] = d00 * a.y[k] + d10 * a.dy[k] + d01 * b.y[k] + d11 * b.dy[k];
        }
        return out;
    }

    std::size_t locate(double t, bool fwd) const {
        std::size_t lo = 0, hi = nodes.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            const bool left = fwd ? (nodes[mid].t <= t) : (nodes[mid].t >= t);
            if (left)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }
};

namespace detail {
// Dormand-Prince coefficients.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// 5th-order weights equal the last row of a; 4th-order weights below.
inline constexpr double dp_b4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
}  // namespace detail

// Integrates dy/dt = f(t, y) from t0 to t1 (either direction). f must have
// signature std::array<double,N>(double, const std::array<double,N>&).
// accept(t, y, dy) is invoked for every accepted step including the initial
// point; it may be a no-op.
template <std::size_t N, typename F, typename Accept>
OdeSolution<N> integrate_adaptive(F&& f, std::array<double, N> y0, double t0, double t1,
                                  const OdeTolerances& tol, Accept&& accept) {
    OdeSolution<N> sol;
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    if (span == 0.0) {
        auto dy = f(t0, y0);
        accept(t0, y0, dy);
        sol.nodes.push_back({t0, y0, dy});
        sol.nodes.push_back({t0, y0, dy});
        return sol;
    }

    double t = t0;
    std::array<double, N> y = y0;
    std::array<double, N> k0 = f(t, y);
    accept(t, y, k0);
    sol.nodes.push_back({t, y, k0});

    // Initial step from the scale of f.
    double fn = 0.0, yn = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        fn = std::max(fn, std::abs(k0[i]));
        yn = std::max(yn, std::abs(y[i]));
    }
    double h = dir * std::min(span, std::max(1e-8 * span, 0.01 * (yn + 1.0) / (fn + 1e-30)));
    const double h_cap = (tol.max_step > 0.0) ? tol.max_step : span;
    if (std::abs(h) > h_cap) h = dir * h_cap;

    const double h_min = 1e-14 * std::max(1.0, span);
    std::array<std::array<double, N>, 7> k;
    k[0] = k0;

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < h_min)
            throw IntegratorError("step size underflow in adaptive RK45", t);

        std::array<double, N> ytmp;
        for (int s = 1; s < 7; ++s) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += detail::dp_a[s][j] * k[static_cast<size_t>(j)][i];
                ytmp[i] = y[i] + h * acc;
            }
            k[static_cast<size_t>(s)] = f(t + detail::dp_c[s] * h, ytmp);
        }
        // 5th-order solution is stage input of k[6]; error vs embedded 4th order.
        std::array<double, N> y5 = ytmp;
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e4 = 0.0;
            for (int s = 0; s < 7; ++s) e4 += detail::dp_b4[s] * k[static_cast<size_t>(s)][i];
            const double diff = y5[i] - (y[i] + h * e4);
            const double sc = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (diff / sc) * (diff / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            t += h;
            y = y5;
            k[0] = k[6];  // FSAL
            accept(t, y, k[0]);
            sol.nodes.push_back({t, y, k[0]});
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > h_cap) h = dir * h_cap;
    }
    return sol;
}

template <std::size_t N, typename F>
OdeSolution<N> integrate_adaptive(F&& f, std::array<double, N> y0, double t0, double t1,
                                  const OdeTolerances& tol) {
    return integrate_adaptive<N>(std::forward<F>(f), y0, t0, t1, tol,
                                 [](double, const std::array<double, N>&,
                                    const std::array<double, N>&) {});
}

}  // namespace dmme
