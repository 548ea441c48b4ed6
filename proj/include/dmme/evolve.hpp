#pragma once

// Time integrators: closed Schroedinger evolution, the driven-Markovian
// master equation in the Schroedinger picture, its adiabatic limit, the
// inertial-limit consistency checks, and the exact dephasing-model solution.

#include <optional>
#include <vector>

#include "dmme/bath.hpp"
#include "dmme/coupling.hpp"
#include "dmme/lri.hpp"
#include "dmme/rates.hpp"

namespace dmme {

struct TrajectoryPoint {
    double t = 0.0;
    DensityMatrix rho;
    std::optional<Vec2> psi;  // pure-state runs only
    RateSet rates;
    double trace_err = 0.0;
    double herm_err = 0.0;
    double min_eig = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    double max_trace_err = 0.0;
    double max_herm_err = 0.0;
    double min_eigenvalue = 1.0;
    bool positivity_violated = false;  // min eigenvalue dipped below -1e-6
    bool negative_rates = false;

    const TrajectoryPoint& front() const { return points.front(); }
    const TrajectoryPoint& back() const { return points.back(); }
};

// Lindblad operators in projector form (phases cancel inside dissipators):
//   Sigma- = |psi1><psi2|, Sigma+ = |psi2><psi1|,
//   Sigma_z = |psi2><psi2| - |psi1><psi1|.
struct LindbladSet {
    Mat2 sigma_plus;
    Mat2 sigma_minus;
    Mat2 sigma_z;
};

LindbladSet lindblad_set(const LriFrame& frame, double t);

struct EvolveOptions {
    RateSource source = RateSource::slow_phase;
    RateConvention convention = RateConvention::gadi;
    ChannelSet channels{};
    bool lamb_shift = false;
    double s_max = -1.0;  // memory-kernel truncation; < 0 selects the default
    OdeTolerances tol{};
    int output_points = 501;
};

// i d(psi)/dt = H(t) psi, adaptive RK45. Defaults are tighter than the
// master-equation ones so the norm stays within 1e-8 over long windows.
Trajectory schrodinger_evolve(const Protocol& p, const Vec2& psi0,
                              const OdeTolerances& tol = {1e-12, 1e-14},
                              int output_points = 501);

// The master equation of the module header in rates.hpp, with Sigma operators
// built from the LRI eigenstates of `frame`.
Trajectory dmme_evolve(const LriFrame& frame, const CouplingEvaluator& coeffs,
                       const BathSpec& bath, const DensityMatrix& rho0,
                       const EvolveOptions& opts = {});

// Adiabatic master equation: Lindblad operators from the instantaneous
// Hamiltonian eigenstates, rates 2 gamma_0 (N+1), 2 gamma_0 N evaluated at
// the instantaneous gap alpha = 2 sqrt(Delta^2 + Omega^2).
Trajectory ame_evolve(const Protocol& p, const BathSpec& bath, const DensityMatrix& rho0,
                      const OdeTolerances& tol = {}, int output_points = 501);

// Exact dephasing-model solution (zero temperature): dressed-basis coherences
// decay by exp(-Gamma_e(t)), populations are frozen, then the state is dressed
// back with the free propagator.
Trajectory dephasing_exact(const LriFrame& frame, const BathSpec& bath,
                           const DensityMatrix& rho0, int output_points = 501);

// Constant-mu driving protocol: Delta = omega_bar cos(beta), Omega =
// omega_bar sin(beta), beta(t) = beta0 - 2 mu omega_bar (t - t0). Delivered
// as a dense custom-tabulated protocol.
Protocol make_inertial_protocol(double mu, double omega_bar, double beta0, double t_start,
                                double t_end, int table_points = 24001);

struct InertialReport {
    double mu = 0.0;
    double max_mu_drift = 0.0;
    double max_residual = 0.0;  // worst residual of the two parameter equations
    double min_overlap = 1.0;   // worst |<eigvec(Sigma_z)|parameterized state>|
    int samples = 0;
};

// Checks that the closed-form inertial parameterization solves the LRI
// parameter equations for this protocol and that the inertial Sigma_z
// eigenvectors coincide with it. Throws ProtocolNotInertialError if the
// protocol's inertial parameter drifts from `mu` by more than 1e-6.
InertialReport inertial_consistency(const Protocol& p, double mu, int samples = 101);

}  // namespace dmme
