#include "dmme/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "dmme/errors.hpp"
#include "dmme/quadrature.hpp"

namespace dmme {

namespace {
constexpr double kNegTol = -1e-15;

void flag_negative(RateSet& r) {
    r.negative_rate = r.gamma_plus < kNegTol || r.gamma_minus < kNegTol || r.gamma_d < kNegTol;
}
}  // namespace

RateSet slow_phase_rates(const CouplingEvaluator& coeffs, const BathSpec& b, double t,
                         ChannelSet channels, RateConvention conv) {
    const double f = (conv == RateConvention::gadi) ? 2.0 : 1.0;
    const XiTable xi = coeffs.amplitudes(t);
    const AlphaTable al = coeffs.frequencies_checked(t);
    RateSet r;
    r.t = t;
    r.alpha12_x = al.alpha12_x;
    r.alpha12_y = al.alpha12_y;
    r.degenerate_x = al.degenerate_x;
    r.degenerate_y = al.degenerate_y;
    const double lam0 = lambda_real(b, 0.0);
    double rd = 0.0;
    if (channels.x) {
        if (!al.degenerate_x) {
            r.gamma_minus += f * xi.xi12_x * xi.xi12_x * lambda_real(b, al.alpha12_x);
            r.gamma_plus += f * xi.xi12_x * xi.xi12_x * lambda_real(b, -al.alpha12_x);
        }
        rd += xi.xi11_x * xi.xi11_x * lam0;
    }
    if (channels.y) {
        if (!al.degenerate_y) {
            r.gamma_minus += f * xi.xi12_y * xi.xi12_y * lambda_real(b, al.alpha12_y);
            r.gamma_plus += f * xi.xi12_y * xi.xi12_y * lambda_real(b, -al.alpha12_y);
        }
        rd += xi.xi11_y * xi.xi11_y * lam0;
    }
    r.gamma_d = 0.25 * rd;
    flag_negative(r);
    return r;
}

RateSet lz_rates(const CouplingEvaluator& coeffs, const BathSpec& b, double t, Channel channel) {
    ChannelSet ch;
    ch.x = (channel == Channel::x);
    ch.y = (channel == Channel::y);
    RateSet r = slow_phase_rates(coeffs, b, t, ch, RateConvention::lz_section);
    r.gamma_d = 0.0;  // the sign-switching form carries only the +/- dissipator
    return r;
}

DephasingRates dephasing_rates(const BathSpec& b, double t) {
    if (b.temperature > 0.0)
        throw UnsupportedConfigError(
            "dephasing-model closed-form rates require zero reservoir temperature");
    if (t < 0.0) throw std::invalid_argument("dephasing rates are defined for t >= 0");
    const double x = b.omega_c * t;
    const double den = x * x + 1.0;
    return {b.kappa * b.omega_c * b.omega_c * t / den,
            b.kappa * b.omega_c * b.omega_c * b.omega_c * t * t / den};
}

RateSet dephasing_rate_set(const BathSpec& b, double t) {
    const DephasingRates g = dephasing_rates(b, t);
    RateSet r;
    r.t = t;
    r.gamma_d = 0.25 * g.real;
    r.lamb_d = g.imag;
    return r;
}

cplx memory_kernel_rate(const ChannelSignal& sig_mn, const ChannelSignal& sig_mpnp,
                        const BathSpec& b, double t, double s_max) {
    if (!(s_max > 0.0)) throw std::invalid_argument("memory-kernel upper limit must be > 0");
    const double xi_out = sig_mpnp.xi(t);
    const double th_out = sig_mpnp.theta(t);
    if (xi_out == 0.0) return {0.0, 0.0};
    auto integrand = [&](double s) -> cplx {
        const double xi_in = sig_mn.xi(t - s);
        if (xi_in == 0.0) return {0.0, 0.0};
        const cplx phase = std::exp(iu * (sig_mn.theta(t - s) - th_out));
        return xi_out * xi_in * phase * correlation(b, s);
    };
    return integrate<cplx>(integrand, 0.0, s_max, QuadTolerances{1e-10, 1e-8});
}

RateSet memory_kernel_rate_set(const CouplingEvaluator& coeffs, const BathSpec& b, double t,
                               double s_max, ChannelSet channels, RateConvention conv) {
    const double f = (conv == RateConvention::gadi) ? 2.0 : 1.0;
    if (s_max < 0.0)
        s_max = std::min(t - coeffs.frame().t_start(), 10.0 / b.omega_c);
    const AlphaTable al = coeffs.frequencies_checked(t);
    RateSet r;
    r.t = t;
    r.alpha12_x = al.alpha12_x;
    r.alpha12_y = al.alpha12_y;
    r.degenerate_x = al.degenerate_x;
    r.degenerate_y = al.degenerate_y;
    if (s_max == 0.0) return r;
    double rd = 0.0;
    for (Channel c : {Channel::x, Channel::y}) {
        if ((c == Channel::x && !channels.x) || (c == Channel::y && !channels.y)) continue;
        const auto s12 = make_signal(coeffs, c, 1, 2);
        const auto s21 = make_signal(coeffs, c, 2, 1);
        const auto s11 = make_signal(coeffs, c, 1, 1);
        r.gamma_minus += f * std::real(memory_kernel_rate(s12, s12, b, t, s_max));
        r.gamma_plus += f * std::real(memory_kernel_rate(s21, s21, b, t, s_max));
        rd += std::real(memory_kernel_rate(s11, s11, b, t, s_max));
    }
    r.gamma_d = 0.25 * rd;
    flag_negative(r);
    return r;
}

}  // namespace dmme
