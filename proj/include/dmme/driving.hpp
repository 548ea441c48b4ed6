#pragma once

// Catalog of driving protocols Delta(t), Omega(t) with a uniform evaluation
// interface and first-derivative access. All frequencies are angular, in
// natural units (hbar = c = 1).

#include <memory>
#include <string>
#include <vector>

#include "dmme/qlinalg.hpp"

namespace dmme {

enum class ProtocolFamily { constant, sine_squared, landau_zener, tabulated };

struct ProtocolSample {
    double delta;
    double omega;
    double ddelta;
    double domega;
};

class Protocol {
public:
    // Delta = delta0, Omega = omega0 on [t_start, t_end].
    static Protocol constant(double delta0, double omega0, double t_start, double t_end);

    // Delta = delta0, Omega = omega0 * sin^2(drive_freq * t).
    static Protocol sine_squared(double delta0, double omega0, double drive_freq,
                                 double t_start, double t_end);

    // Delta = v t / 2, Omega = omega0 / 2 on [-T, T]. The scattering window is
    // truncated at T = window_scale / sqrt(v).
    static Protocol landau_zener(double v, double omega0, double window_scale = 40.0);

    // Monotone cubic (Fritsch-Carlson) interpolation through the samples;
    // derivatives by centered differences with step 1e-6 * window length.
    static Protocol tabulated(std::vector<double> times, std::vector<double> deltas,
                              std::vector<double> omegas);

    ProtocolSample eval(double t) const;
    Mat2 hamiltonian(double t) const;  // Delta sigma_z + Omega sigma_x

    ProtocolFamily family() const;
    std::string family_name() const;
    double t_start() const;
    double t_end() const;
    double sweep_velocity() const;  // landau_zener only
    double max_abs_omega() const;   // sampled over the window

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit Protocol(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace dmme
