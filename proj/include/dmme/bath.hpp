#pragma once

// Reservoir model: ohmic spectral density with exponential cutoff, Planck
// occupation, the real part of the one-sided Fourier transform of the
// correlation function, and the correlation function itself.

#include <complex>

#include "dmme/qlinalg.hpp"

namespace dmme {

struct BathSpec {
    double kappa;            // dimensionless coupling rate, >= 0
    double omega_c;          // cutoff, > 0
    double temperature;      // k_B = 1, >= 0
    double laser_offset = 0; // frame offset entering the Planck argument

    void validate() const;
};

// J(w) = kappa w exp(-|w|/omega_c); odd in w.
double spectral_density(const BathSpec& b, double w);

// N(w) = 1/(e^{w/T} - 1). At T = 0 the limits are 0 (w > 0) and -1 (w < 0).
// Implemented so that N(-w) = -(N(w) + 1) holds exactly. Throws on w = 0.
double planck(const BathSpec& b, double w);

// Re Lambda(alpha) = pi J(alpha) (N(alpha + omega_L) + 1); the removable
// 0 * pole at alpha = -omega_L = 0 is evaluated as its limit pi kappa T.
double lambda_real(const BathSpec& b, double alpha);

// C(s) = int_0^inf dw J(w) [(2N(w)+1) cos(ws) - i sin(ws)].
// Closed form at T = 0, adaptive quadrature otherwise.
cplx correlation(const BathSpec& b, double s);

// Quadrature evaluation regardless of temperature (oracle for the closed
// form; integrates over [0, 50 max(omega_c, T)]).
cplx correlation_quadrature(const BathSpec& b, double s);

}  // namespace dmme
