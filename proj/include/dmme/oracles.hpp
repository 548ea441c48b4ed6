#pragma once

// Closed-form reference results the simulators are tested against.

#include "dmme/bath.hpp"

namespace dmme {

// Dissipative Landau-Zener survival probability on the diabatic |1> state:
//   P11 = exp(-pi W^2 / (2 v)),  W^2 = Omega0^2 + (kappa/4) Omega_c^2.
struct LzPrediction {
    double v;
    double omega0;
    double kappa;
    double omega_c;
    double w_squared;
    double p11;
};

LzPrediction lz_exact(double v, double omega0, double kappa, double omega_c);

// Decoherence function of the dephasing model at zero temperature:
//   Gamma_e(t) = (kappa/2) ln(1 + Omega_c^2 t^2),
// which satisfies Gamma_e(t) = int_0^t Gamma_D^R(tau) dtau.
double dephasing_gamma_e(const BathSpec& b, double t);

}  // namespace dmme
