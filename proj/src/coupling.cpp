#include "dmme/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "dmme/errors.hpp"
#include "dmme/quadrature.hpp"

namespace dmme {

namespace {

constexpr double kDegenerate = 1e-9;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double raw_phi(Channel c, double eta, double zeta) {
    const double c2e = std::cos(2.0 * eta);
    if (c == Channel::x) return std::atan2(std::sin(zeta), -c2e * std::cos(zeta));
    return std::atan2(std::cos(zeta), c2e * std::sin(zeta));
}

}  // namespace

CouplingEvaluator::CouplingEvaluator(const LriFrame& frame) : frame_(&frame) {
    // Continue the arctan branch of phi_12 along a refined copy of the frame
    // grid; cells are small enough that the true angle moves < pi per cell.
    for (Channel c : {Channel::x, Channel::y}) {
        UnwrapTable& tab = (c == Channel::x) ? phi_x_ : phi_y_;
        const auto& nodes = frame.nodes();
        double prev_t = nodes.front().t;
        double prev_raw = raw_phi(c, nodes.front().y[0], nodes.front().y[1]);
        tab.ts.push_back(prev_t);
        tab.raw.push_back(prev_raw);
        tab.unwrapped.push_back(prev_raw);
        for (size_t i = 1; i < nodes.size(); ++i) {
            const double t1 = nodes[i].t;
            const double motion = std::abs(nodes[i].y[0] - nodes[i - 1].y[0]) +
                                  std::abs(nodes[i].y[1] - nodes[i - 1].y[1]);
            const int pieces = std::min(400, std::max(1, static_cast<int>(motion / 0.05) + 1));
            for (int j = 1; j <= pieces; ++j) {
                const double t = prev_t + (t1 - prev_t) * j / pieces;
                const double e = frame.eta(t);
                const double z = frame.zeta(t);
                const double raw = raw_phi(c, e, z);
                const double delta = std::remainder(raw - tab.raw.back(), kTwoPi);
                tab.ts.push_back(t);
                tab.raw.push_back(raw);
                tab.unwrapped.push_back(tab.unwrapped.back() + delta);
            }
            prev_t = t1;
        }
    }
}

double CouplingEvaluator::unwrapped_phi(Channel c, double t) const {
    const UnwrapTable& tab = (c == Channel::x) ? phi_x_ : phi_y_;
    size_t lo = 0, hi = tab.ts.size() - 1;
    const bool fwd = tab.ts.back() >= tab.ts.front();
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (fwd ? (tab.ts[mid] <= t) : (tab.ts[mid] >= t))
            lo = mid;
        else
            hi = mid;
    }
    const double raw = raw_phi(c, frame_->eta(t), frame_->zeta(t));
    return tab.unwrapped[lo] + std::remainder(raw - tab.raw[lo], kTwoPi);
}

XiTable coupling_amplitudes(double eta, double zeta) {
    const double s2e = std::sin(2.0 * eta);
    const double dx = s2e * std::cos(zeta);
    const double dy = s2e * std::sin(zeta);
    return {std::abs(dx), std::sqrt(std::max(0.0, 1.0 - dx * dx)),
            std::abs(dy), std::sqrt(std::max(0.0, 1.0 - dy * dy))};
}

AlphaTable coupling_frequencies(double eta, double zeta, double eta_dot, double zeta_dot,
                                double delta, double omega) {
    const double s2e = std::sin(2.0 * eta);
    const double c2e = std::cos(2.0 * eta);
    const double cz = std::cos(zeta);
    const double sz = std::sin(zeta);
    const double s2z = std::sin(2.0 * zeta);
    const double base = -zeta_dot * c2e - 2.0 * delta * c2e - 2.0 * omega * cz * s2e;
    const double den_x = 1.0 - s2e * s2e * cz * cz;
    const double den_y = 1.0 - s2e * s2e * sz * sz;
    AlphaTable out{0.0, 0.0, den_x < kDegenerate, den_y < kDegenerate};
    if (!out.degenerate_x)
        out.alpha12_x = base + (eta_dot * s2e * s2z + zeta_dot * c2e) / den_x;
    if (!out.degenerate_y)
        out.alpha12_y = base - (eta_dot * s2e * s2z - zeta_dot * c2e) / den_y;
    return out;
}

XiTable CouplingEvaluator::amplitudes(double t) const {
    return coupling_amplitudes(frame_->eta(t), frame_->zeta(t));
}

AlphaTable CouplingEvaluator::frequencies_checked(double t) const {
    const auto dot = frame_->derivatives(t);
    const auto s = frame_->protocol().eval(t);
    return coupling_frequencies(frame_->eta(t), frame_->zeta(t), dot.eta_dot, dot.zeta_dot,
                                s.delta, s.omega);
}

AlphaTable CouplingEvaluator::frequencies(double t) const {
    const AlphaTable out = frequencies_checked(t);
    if (out.degenerate_x) throw DegenerateChannelError('x', t);
    if (out.degenerate_y) throw DegenerateChannelError('y', t);
    return out;
}

double CouplingEvaluator::alpha12(Channel c, double t) const {
    const AlphaTable out = frequencies_checked(t);
    if (c == Channel::x) {
        if (out.degenerate_x) throw DegenerateChannelError('x', t);
        return out.alpha12_x;
    }
    if (out.degenerate_y) throw DegenerateChannelError('y', t);
    return out.alpha12_y;
}

ThetaTable CouplingEvaluator::phases(double t) const {
    const double eta = frame_->eta(t);
    const double zeta = frame_->zeta(t);
    const double a21 = frame_->alpha2(t) - frame_->alpha1(t);
    const double s2e = std::sin(2.0 * eta);
    const double dx = s2e * std::cos(zeta);
    const double dy = s2e * std::sin(zeta);
    const double pi = kTwoPi / 2.0;
    ThetaTable out{};
    out.theta12_x = a21 + unwrapped_phi(Channel::x, t);
    out.theta12_y = a21 + unwrapped_phi(Channel::y, t);
    out.theta11_x = (dx >= 0.0) ? 0.0 : pi;
    out.theta22_x = (dx >= 0.0) ? pi : 0.0;
    out.theta11_y = (dy >= 0.0) ? pi : 0.0;
    out.theta22_y = (dy >= 0.0) ? 0.0 : pi;
    return out;
}

double CouplingEvaluator::xi(Channel c, int m, int n, double t) const {
    const XiTable x = amplitudes(t);
    const bool diag = (m == n);
    if (c == Channel::x) return diag ? x.xi11_x : x.xi12_x;
    return diag ? x.xi11_y : x.xi12_y;
}

double CouplingEvaluator::theta(Channel c, int m, int n, double t) const {
    const ThetaTable th = phases(t);
    if (m == 1 && n == 2) return (c == Channel::x) ? th.theta12_x : th.theta12_y;
    if (m == 2 && n == 1) return (c == Channel::x) ? -th.theta12_x : -th.theta12_y;
    if (m == 1 && n == 1) return (c == Channel::x) ? th.theta11_x : th.theta11_y;
    if (m == 2 && n == 2) return (c == Channel::x) ? th.theta22_x : th.theta22_y;
    throw std::invalid_argument("index pair must be in {11,12,21,22}");
}

double CouplingEvaluator::theta_memory(Channel c, int m, int n, double t, double s) const {
    if (s < 0.0) throw std::invalid_argument("delay must be >= 0");
    if (s == 0.0) return 0.0;
    const double span = std::max(1.0, frame_->t_end() - frame_->t_start());
    if (t - s < frame_->t_start() - 1e-9 * span)
        throw std::out_of_range("t - s precedes the frame start");
    if (m == n) return 0.0;  // diagonal frequencies vanish identically
    const double sign = (m == 1 && n == 2) ? 1.0 : -1.0;
    const double at = alpha12(c, t);
    auto integrand = [&](double tau) { return alpha12(c, tau) - at; };
    return sign * integrate(integrand, t - s, t, QuadTolerances{1e-10, 1e-8});
}

ChannelSignal make_signal(const CouplingEvaluator& coeffs, Channel c, int m, int n) {
    if (m < 1 || m > 2 || n < 1 || n > 2)
        throw std::invalid_argument("index pair must be in {11,12,21,22}");
    return {[&coeffs, c, m, n](double t) { return coeffs.xi(c, m, n, t); },
            [&coeffs, c, m, n](double t) { return coeffs.theta(c, m, n, t); }};
}

ChannelSignal dephasing_model_signal() {
    return {[](double) { return 1.0; }, [](double) { return kTwoPi / 2.0; }};
}

}  // namespace dmme
