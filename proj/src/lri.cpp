#include "dmme/lri.hpp"

#include <cmath>

#include "dmme/errors.hpp"

namespace dmme {

namespace {

constexpr double kSingularBand = 1e-6;

std::array<double, 4> lri_rhs(const ProtocolSample& s, const std::array<double, 4>& y) {
    const double eta = y[0];
    const double zeta = y[1];
    const double s2e = std::sin(2.0 * eta);
    const double c2e = std::cos(2.0 * eta);
    const double cz = std::cos(zeta);
    const double sz = std::sin(zeta);
    // Trial evaluations may probe arbitrarily close to the singular manifold;
    // clamp the divisor there and let the accepted-step check raise the error.
    double div = s2e;
    if (std::abs(div) < 1e-12) div = (div >= 0.0 ? 1e-12 : -1e-12);
    const double eta_dot = s.omega * sz;
    const double zeta_dot = 2.0 * s.omega * cz * c2e / div - 2.0 * s.delta;
    const double common = s.delta * c2e + s.omega * cz * s2e;
    const double ce = std::cos(eta);
    const double se = std::sin(eta);
    const double alpha1_dot = -zeta_dot * ce * ce - common;
    const double alpha2_dot = -zeta_dot * se * se + common;
    return {eta_dot, zeta_dot, alpha1_dot, alpha2_dot};
}

}  // namespace

LriInit adiabatic_init(double delta, double omega) {
    const double bar = std::sqrt(delta * delta + omega * omega);
    if (bar == 0.0) throw std::invalid_argument("adiabatic init undefined for Delta = Omega = 0");
    const double arg = -std::sqrt(0.5 * (bar - delta) / bar);
    return {std::acos(std::clamp(arg, -1.0, 1.0)), 0.0};
}

LriInit adiabatic_init_regularized(const Protocol& p, double floor_fraction) {
    const auto s = p.eval(p.t_start());
    const double floor = floor_fraction * p.max_abs_omega();
    double omega = s.omega;
    if (std::abs(omega) < floor) omega = (omega >= 0.0 ? floor : -floor);
    return adiabatic_init(s.delta, omega);
}

LriFrame::LriFrame(Protocol protocol, OdeSolution<4> solution)
    : protocol_(std::move(protocol)), solution_(std::move(solution)) {}

LriStateDot LriFrame::derivatives(double t) const {
    const auto y = solution_.eval(t);
    const auto dy = lri_rhs(protocol_.eval(t), y);
    return {dy[0], dy[1], dy[2], dy[3]};
}

std::pair<Vec2, Vec2> lri_eigenstates(double eta, double zeta) {
    const double ce = std::cos(eta);
    const double se = std::sin(eta);
    const cplx ph = std::exp(iu * zeta);
    return {Vec2{ce * ph, se}, Vec2{se * ph, -ce}};
}

std::pair<Vec2, Vec2> LriFrame::eigenstates(double t) const {
    const auto y = solution_.eval(t);
    return lri_eigenstates(y[0], y[1]);
}

Mat2 LriFrame::propagator(double t) const {
    const auto y = solution_.eval(t);
    const auto [p1, p2] = eigenstates(t);
    const auto [q1, q2] = eigenstates(t_start());
    return std::exp(iu * y[2]) * outer(p1, q1) + std::exp(iu * y[3]) * outer(p2, q2);
}

Mat2 LriFrame::invariant_at(double t, double omega_i) const {
    const auto [p1, p2] = eigenstates(t);
    return omega_i * (outer(p1, p1) - outer(p2, p2));
}

double LriFrame::equation_residual(double t) const {
    const auto y = solution_.eval(t);
    const auto dy = solution_.eval_derivative(t);
    const auto s = protocol_.eval(t);
    const double s2e = std::sin(2.0 * y[0]);
    const double c2e = std::cos(2.0 * y[0]);
    const double r1 = dy[0] - s.omega * std::sin(y[1]);
    const double r2 = s2e * (2.0 * s.delta + dy[1]) - 2.0 * s.omega * c2e * std::cos(y[1]);
    return std::max(std::abs(r1), std::abs(r2));
}

LriFrame solve_lri(const Protocol& p, const LriInit& init, const OdeTolerances& tol) {
    if (std::abs(std::sin(2.0 * init.eta0)) < kSingularBand)
        throw SingularEtaError(p.t_start(), std::sin(2.0 * init.eta0));
    auto rhs = [&p](double t, const std::array<double, 4>& y) { return lri_rhs(p.eval(t), y); };
    auto accept = [](double t, const std::array<double, 4>& y, const std::array<double, 4>&) {
        const double s2e = std::sin(2.0 * y[0]);
        if (std::abs(s2e) < kSingularBand) throw SingularEtaError(t, s2e);
    };
    auto sol = integrate_adaptive<4>(rhs, {init.eta0, init.zeta0, 0.0, 0.0}, p.t_start(),
                                     p.t_end(), tol, accept);
    return LriFrame(p, std::move(sol));
}

}  // namespace dmme
