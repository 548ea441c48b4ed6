#include "dmme/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "dmme/errors.hpp"

namespace dmme {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

LzPrediction lz_exact(double v, double omega0, double kappa, double omega_c) {
    if (!(v > 0.0)) throw std::invalid_argument("sweep velocity must be > 0");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
    const double w2 = omega0 * omega0 + 0.25 * kappa * omega_c * omega_c;
    return {v, omega0, kappa, omega_c, w2, std::exp(-kPi * w2 / (2.0 * v))};
}

double dephasing_gamma_e(const BathSpec& b, double t) {
    if (b.temperature > 0.0)
        throw UnsupportedConfigError("decoherence function requires zero temperature");
    const double x = b.omega_c * t;
    return 0.5 * b.kappa * std::log1p(x * x);
}

}  // namespace dmme
