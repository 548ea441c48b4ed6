#pragma once

// Time-dependent decoherence rates feeding the master-equation generator
//
//   d(rho)/dt = -i[H + H_LS, rho] + gamma_plus  D[Sigma+] rho
//                                 + gamma_minus D[Sigma-] rho
//                                 + gamma_d [Sigma_z, [rho, Sigma_z]].
//
// RateSet fields are the generator coefficients of that equation. gamma_d is
// the double-commutator coefficient; the dressed-basis coherence decay rate
// it produces is 4*gamma_d, and sources fill it so that this decay rate
// equals the channel dephasing rate R_d (= xi11^2 Lambda^R(0) summed over
// channels, the quantity whose closed form the dephasing model pins via its
// exact solution). The +/- coefficients carry the convention switch:
// `gadi` uses 2 xi^2 Lambda^R (the full-Fourier-transform normalization),
// `lz_section` uses xi^2 Lambda^R.

#include <complex>
#include <optional>

#include "dmme/bath.hpp"
#include "dmme/coupling.hpp"

namespace dmme {

enum class RateSource { slow_phase, lz, dephasing, memory_kernel };
enum class RateConvention { gadi, lz_section };

struct ChannelSet {
    bool x = false;
    bool y = true;
};

struct RateSet {
    double t = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_d = 0.0;
    double lamb_plus = 0.0;
    double lamb_minus = 0.0;
    double lamb_d = 0.0;
    double alpha12_x = 0.0;
    double alpha12_y = 0.0;
    bool degenerate_x = false;
    bool degenerate_y = false;
    bool negative_rate = false;
};

// Slow-phase closed forms: per enabled channel j,
//   gamma_minus += f xi12^2 Lambda^R(alpha12),
//   gamma_plus  += f xi12^2 Lambda^R(-alpha12),   f = 2 (gadi) or 1 (lz_section),
//   R_d         += xi11^2 Lambda^R(0).
// Degenerate channels contribute zero to the +/- rates.
RateSet slow_phase_rates(const CouplingEvaluator& coeffs, const BathSpec& b, double t,
                         ChannelSet channels = {}, RateConvention conv = RateConvention::gadi);

// Sign-switching Landau-Zener rate (y-channel, lz_section prefactor). At
// T = 0 this is Gamma = kappa pi xi12^2 |alpha12| e^{-|alpha12|/Omega_c}
// attached to D[Sigma-] for alpha12 > 0 and to D[Sigma+] for alpha12 < 0.
RateSet lz_rates(const CouplingEvaluator& coeffs, const BathSpec& b, double t,
                 Channel channel = Channel::y);

// Dephasing-model closed forms (zero temperature only):
//   Gamma_D^R(t) = kappa Omega_c^2 t / (Omega_c^2 t^2 + 1),
//   Gamma_D^I(t) = kappa Omega_c^3 t^2 / (Omega_c^2 t^2 + 1).
struct DephasingRates {
    double real;
    double imag;
};
DephasingRates dephasing_rates(const BathSpec& b, double t);

// RateSet view of the dephasing model: gamma_d = Gamma_D^R/4 so that the
// dressed coherence decay rate equals Gamma_D^R; lamb_d = Gamma_D^I (the
// Lamb term is proportional to the identity for this model).
RateSet dephasing_rate_set(const BathSpec& b, double t);

// Truncated memory-kernel rate
//   Gamma(t) = int_0^{s_max} ds xi_{m'n'}(t) xi_{mn}(t-s)
//              e^{i (theta_mn(t-s) - theta_{m'n'}(t))} C(s).
cplx memory_kernel_rate(const ChannelSignal& sig_mn, const ChannelSignal& sig_mpnp,
                        const BathSpec& b, double t, double s_max);

// RateSet assembled from the memory kernel on the diagonal index pairs.
// s_max < 0 selects the default min(t - frame start, 10/Omega_c).
RateSet memory_kernel_rate_set(const CouplingEvaluator& coeffs, const BathSpec& b, double t,
                               double s_max = -1.0, ChannelSet channels = {},
                               RateConvention conv = RateConvention::gadi);

}  // namespace dmme
