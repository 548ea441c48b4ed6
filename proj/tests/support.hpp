#pragma once

// Test-only helpers: a deterministic generator for property-style sampling
// and a fixed-step RK4 integrator used as an independent oracle for the
// adaptive solver. These stay out of the library on purpose.

#include <array>
#include <cmath>
#include <cstdint>

namespace testsupport {

// Deterministic 64-bit LCG; no std::random to keep values platform-stable.
class Rng {
public:
    explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}

    double uniform(double lo, double hi) {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        const double u = static_cast<double>(state_ >> 11) / 9007199254740992.0;
        return lo + (hi - lo) * u;
    }

private:
    uint64_t state_;
};

// Classic RK4 at fixed step; f: (t, y) -> dy.
template <std::size_t N, typename F>
std::array<double, N> rk4_integrate(F&& f, std::array<double, N> y, double t0, double t1,
                                    double h) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    const double hs = dir * std::abs(h);
    while (dir * (t1 - t) > 1e-15) {
        double step = hs;
        if (dir * (t + step - t1) > 0.0) step = t1 - t;
        const auto k1 = f(t, y);
        std::array<double, N> y2;
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * step * k1[i];
        const auto k2 = f(t + 0.5 * step, y2);
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * step * k2[i];
        const auto k3 = f(t + 0.5 * step, y2);
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + step * k3[i];
        const auto k4 = f(t + step, y2);
        for (std::size_t i = 0; i < N; ++i)
            y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += step;
    }
    return y;
}

}  // namespace testsupport
