#include "dmme/bath.hpp"

#include <cmath>
#include <stdexcept>

#include "dmme/quadrature.hpp"

namespace dmme {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void BathSpec::validate() const {
    if (!(kappa >= 0.0)) throw std::invalid_argument("bath coupling kappa must be >= 0");
    if (!(omega_c > 0.0)) throw std::invalid_argument("bath cutoff must be > 0");
    if (!(temperature >= 0.0)) throw std::invalid_argument("bath temperature must be >= 0");
}

double spectral_density(const BathSpec& b, double w) {
    return b.kappa * w * std::exp(-std::abs(w) / b.omega_c);
}

double planck(const BathSpec& b, double w) {
    if (w == 0.0) throw std::invalid_argument("Planck distribution pole at w = 0");
    if (w < 0.0) return -(planck(b, -w) + 1.0);
    if (b.temperature == 0.0) return 0.0;
    const double x = w / b.temperature;
    const double em = std::exp(-x);
    return em / (1.0 - em);
}

double lambda_real(const BathSpec& b, double alpha) {
    const double arg = alpha + b.laser_offset;
    if (arg == 0.0) {
        // J(alpha) (N(0) + 1) is removable only when J itself vanishes there.
        if (b.laser_offset != 0.0)
            throw std::invalid_argument("Lambda^R pole: alpha + omega_L = 0 with J(alpha) != 0");
        return kPi * b.kappa * b.temperature;
    }
    if (b.temperature == 0.0) {
        const double occ = arg > 0.0 ? 1.0 : 0.0;
        return kPi * spectral_density(b, alpha) * occ;
    }
    return kPi * spectral_density(b, alpha) * (planck(b, arg) + 1.0);
}

cplx correlation(const BathSpec& b, double s) {
    if (b.temperature == 0.0) {
        const double x = b.omega_c * s;
        const double den = (1.0 + x * x) * (1.0 + x * x);
        const double re = b.kappa * b.omega_c * b.omega_c * (1.0 - x * x) / den;
        const double im = -2.0 * b.kappa * std::pow(b.omega_c, 3) * s / den;
        return {re, im};
    }
    return correlation_quadrature(b, s);
}

cplx correlation_quadrature(const BathSpec& b, double s) {
    const double w_max = 50.0 * std::max(b.omega_c, b.temperature);
    auto integrand = [&](double w) -> cplx {
        if (w == 0.0) {
            // (2N+1) J -> 2 kappa T as w -> 0.
            return {2.0 * b.kappa * b.temperature, 0.0};
        }
        const double occ = (b.temperature == 0.0) ? 1.0 : (2.0 * planck(b, w) + 1.0);
        const double j = spectral_density(b, w);
        return {j * occ * std::cos(w * s), -j * std::sin(w * s)};
    };
    return integrate<cplx>(integrand, 0.0, w_max, QuadTolerances{1e-10, 1e-8});
}

}  // namespace dmme
