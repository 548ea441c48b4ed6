#pragma once

// Lewis-Riesenfeld invariant frame for the driven two-level system
// H(t) = Delta(t) sigma_z + Omega(t) sigma_x.
//
// The invariant eigenstates are parameterized by two angles,
//   |psi1> = (cos(eta) e^{i zeta}, sin(eta))^T,
//   |psi2> = (sin(eta) e^{i zeta}, -cos(eta))^T,
// with
//   d(eta)/dt  = Omega sin(zeta),
//   d(zeta)/dt = 2 Omega cot(2 eta) cos(zeta) - 2 Delta.
// The two Lewis-Riesenfeld phases alpha_n are accumulated as extra state
// variables of the same ODE system.

#include <utility>
#include <vector>

#include "dmme/driving.hpp"
#include "dmme/ode.hpp"
#include "dmme/qlinalg.hpp"

namespace dmme {

struct LriInit {
    double eta0;
    double zeta0;
};

// Angles of the instantaneous-eigenbasis fixed point (zeta = 0,
// tan 2eta = Omega/Delta on the branch with eta in (pi/2, pi)).
LriInit adiabatic_init(double delta, double omega);

// Same, with a floor on |Omega| so that the fixed point stays clear of the
// sin(2 eta) = 0 singularity when the drive starts from zero.
LriInit adiabatic_init_regularized(const Protocol& p, double floor_fraction = 1e-3);

// |psi1> = (cos(eta) e^{i zeta}, sin(eta))^T, |psi2> = (sin(eta) e^{i zeta}, -cos(eta))^T.
std::pair<Vec2, Vec2> lri_eigenstates(double eta, double zeta);

struct LriStateDot {
    double eta_dot;
    double zeta_dot;
    double alpha1_dot;
    double alpha2_dot;
};

class LriFrame {
public:
    LriFrame(Protocol protocol, OdeSolution<4> solution);

    const Protocol& protocol() const { return protocol_; }
    double t_start() const { return solution_.t_start(); }
    double t_end() const { return solution_.t_end(); }

    double eta(double t) const { return solution_.eval(t)[0]; }
    double zeta(double t) const { return solution_.eval(t)[1]; }
    double alpha1(double t) const { return solution_.eval(t)[2]; }
    double alpha2(double t) const { return solution_.eval(t)[3]; }

    // ODE right-hand side evaluated at the interpolated state; these are the
    // derivatives used throughout the coupling formulas.
    LriStateDot derivatives(double t) const;

    std::pair<Vec2, Vec2> eigenstates(double t) const;

    // U(t) = sum_n e^{i alpha_n(t)} |psi_n(t)><psi_n(t_start)|
    Mat2 propagator(double t) const;

    // I(t) = omega_i (|psi1><psi1| - |psi2><psi2|)
    Mat2 invariant_at(double t, double omega_i = 1.0) const;

    // Residuals of the defining equations with the interpolant derivative;
    // zero at nodes by construction, bounded by the dense-output error inside
    // a step.
    double equation_residual(double t) const;

    const std::vector<OdeNode<4>>& nodes() const { return solution_.nodes; }

private:
    Protocol protocol_;
    OdeSolution<4> solution_;
};

// Integrates the LRI parameter equations over the protocol window. Throws
// SingularEtaError if an accepted step lands inside |sin 2eta| < 1e-6.
LriFrame solve_lri(const Protocol& p, const LriInit& init, const OdeTolerances& tol = {});

}  // namespace dmme
