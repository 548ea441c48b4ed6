#pragma once

// Eigenoperator-expansion data for the sigma_x / sigma_y coupling channels:
// amplitudes xi_mn, transition phases theta_mn, instantaneous frequencies
// alpha_mn, and the phase-memory correction Theta_mn.
//
// Matrix elements of the coupling operators in the LRI eigenbasis:
//   <psi1|sx|psi1> =  sin2eta cos zeta        <psi1|sx|psi2> = -cos2eta cos zeta + i sin zeta
//   <psi1|sy|psi1> = -sin2eta sin zeta        <psi1|sy|psi2> =  cos2eta sin zeta + i cos zeta
// xi is the modulus (diagonal signs absorbed into phi in {0, pi}), phi the
// argument with its arctan branch continued in t, theta_12 = alpha2 - alpha1
// + phi_12, and alpha_mn = -d(theta_mn)/dt in closed form.

#include <functional>
#include <vector>

#include "dmme/lri.hpp"

namespace dmme {

enum class Channel { x, y };

struct XiTable {
    double xi11_x, xi12_x;  // xi22 = xi11, xi21 = xi12
    double xi11_y, xi12_y;
};

struct AlphaTable {
    double alpha12_x, alpha12_y;  // alpha21 = -alpha12; diagonal frequencies are 0
    bool degenerate_x, degenerate_y;
};

struct ThetaTable {
    double theta12_x, theta12_y;  // theta21 = -theta12
    double theta11_x, theta22_x;  // each 0 or pi
    double theta11_y, theta22_y;
};

// Closed forms at raw frame coordinates.
XiTable coupling_amplitudes(double eta, double zeta);
AlphaTable coupling_frequencies(double eta, double zeta, double eta_dot, double zeta_dot,
                                double delta, double omega);

class CouplingEvaluator {
public:
    explicit CouplingEvaluator(const LriFrame& frame);

    const LriFrame& frame() const { return *frame_; }

    XiTable amplitudes(double t) const;

    // Closed-form alpha_12 per channel; degenerate channels flagged instead of
    // evaluated (their off-diagonal matrix element vanishes).
    AlphaTable frequencies_checked(double t) const;

    // Throwing variant: DegenerateChannelError when 1 - sin^2(2eta) cos^2/sin^2(zeta)
    // underflows 1e-9 for an enabled channel.
    AlphaTable frequencies(double t) const;

    double alpha12(Channel c, double t) const;  // throws when degenerate

    ThetaTable phases(double t) const;

    double xi(Channel c, int m, int n, double t) const;
    double theta(Channel c, int m, int n, double t) const;

    // Theta_mn(t, t-s) = int_{t-s}^t (alpha_mn(tau) - alpha_mn(t)) dtau.
    double theta_memory(Channel c, int m, int n, double t, double s) const;

private:
    struct UnwrapTable {
        std::vector<double> ts;
        std::vector<double> raw;
        std::vector<double> unwrapped;
    };

    double unwrapped_phi(Channel c, double t) const;

    const LriFrame* frame_;
    UnwrapTable phi_x_, phi_y_;
};

// Time-dependent coupling signal (xi(t), theta(t)) of one Lindblad index pair,
// as consumed by the memory-kernel rate integral.
struct ChannelSignal {
    std::function<double(double)> xi;
    std::function<double(double)> theta;
};

ChannelSignal make_signal(const CouplingEvaluator& coeffs, Channel c, int m, int n);

// The engineered dephasing-model channel: xi = 1, theta = pi, constant.
ChannelSignal dephasing_model_signal();

}  // namespace dmme
