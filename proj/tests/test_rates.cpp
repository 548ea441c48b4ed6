#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmme/errors.hpp"
#include "dmme/rates.hpp"
#include "support.hpp"

using namespace dmme;

namespace {

constexpr double kPi = 3.14159265358979323846;

LriFrame static_frame(double delta, double omega, double t_end = 6.0) {
    const Protocol p = Protocol::constant(delta, omega, 0.0, t_end);
    return solve_lri(p, adiabatic_init(delta, omega));
}

}  // namespace

TEST_CASE("slow-phase rates in the adiabatic configuration") {
    // delta^2 + omega^2 = 1 so the gap is exactly 2
    const LriFrame frame = static_frame(0.6, 0.8);
    const CouplingEvaluator coeffs(frame);
    const BathSpec warm{0.1, 8.0, 1.0, 0.0};
    const RateSet r = slow_phase_rates(coeffs, warm, 3.0, ChannelSet{false, true});
    const double alpha = 2.0;
    CHECK(r.alpha12_y == doctest::Approx(alpha).epsilon(1e-9));
    const double n = planck(warm, alpha);
    const double gamma0 = kPi * spectral_density(warm, alpha);
    CHECK(r.gamma_minus == doctest::Approx(2.0 * gamma0 * (n + 1.0)).epsilon(1e-9));
    CHECK(r.gamma_plus == doctest::Approx(2.0 * gamma0 * n).epsilon(1e-9));
    // detailed balance
    CHECK(r.gamma_minus / r.gamma_plus ==
          doctest::Approx(std::exp(alpha / warm.temperature)).epsilon(1e-12));
    // dephasing coefficient: xi11 = 0 here, so only the thermal zero-frequency
    // weight would enter; at the fixed point it vanishes
    CHECK(r.gamma_d <= 1e-12);
}

TEST_CASE("rate conventions differ by exactly the documented prefactor") {
    const LriFrame frame = static_frame(0.6, 0.8);
    const CouplingEvaluator coeffs(frame);
    const BathSpec warm{0.1, 8.0, 1.0, 0.0};
    const RateSet g = slow_phase_rates(coeffs, warm, 2.0, ChannelSet{true, true},
                                       RateConvention::gadi);
    const RateSet l = slow_phase_rates(coeffs, warm, 2.0, ChannelSet{true, true},
                                       RateConvention::lz_section);
    CHECK(g.gamma_minus == doctest::Approx(2.0 * l.gamma_minus).epsilon(1e-14));
    CHECK(g.gamma_plus == doctest::Approx(2.0 * l.gamma_plus).epsilon(1e-14));
    // the dephasing coefficient never carries the +/- convention switch
    CHECK(g.gamma_d == l.gamma_d);
}

TEST_CASE("zero temperature blocks thermal excitation") {
    const LriFrame frame = static_frame(0.6, 0.8);
    const CouplingEvaluator coeffs(frame);
    const BathSpec cold{0.1, 8.0, 0.0, 0.0};
    const RateSet r = slow_phase_rates(coeffs, cold, 3.0, ChannelSet{false, true});
    CHECK(r.gamma_plus == 0.0);
    CHECK(r.gamma_minus > 0.0);
    CHECK(!r.negative_rate);
}

TEST_CASE("degenerate channel contributes zero instead of diverging") {
    const LriFrame frame = static_frame(0.0, 1.0);  // x channel degenerate
    const CouplingEvaluator coeffs(frame);
    const BathSpec cold{0.1, 8.0, 0.0, 0.0};
    const RateSet both = slow_phase_rates(coeffs, cold, 2.0, ChannelSet{true, true});
    const RateSet yonly = slow_phase_rates(coeffs, cold, 2.0, ChannelSet{false, true});
    CHECK(both.degenerate_x);
    CHECK(both.gamma_minus == doctest::Approx(yonly.gamma_minus));
    CHECK(both.gamma_plus == doctest::Approx(yonly.gamma_plus));
}

TEST_CASE("slow-phase dephasing coefficient off the fixed point") {
    // free-precession frame with eta away from the fixed point: xi11 != 0
    const Protocol p = Protocol::constant(0.8, 0.0, 0.0, 3.0);
    const LriFrame frame = solve_lri(p, {1.0, kPi / 2.0});
    const CouplingEvaluator coeffs(frame);
    const BathSpec warm{0.2, 4.0, 1.5, 0.0};
    const double t = 1.0;
    const RateSet r = slow_phase_rates(coeffs, warm, t, ChannelSet{true, true});
    const XiTable xi = coeffs.amplitudes(t);
    const double lam0 = kPi * warm.kappa * warm.temperature;
    const double want = 0.25 * (xi.xi11_x * xi.xi11_x + xi.xi11_y * xi.xi11_y) * lam0;
    CHECK(r.gamma_d == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("sign-switching rate magnitude") {
    const LriFrame frame = static_frame(0.6, 0.8);
    const CouplingEvaluator coeffs(frame);
    const BathSpec cold{0.1, 8.0, 0.0, 0.0};
    const RateSet r = lz_rates(coeffs, cold, 3.0);
    // kappa pi xi^2 |alpha| e^{-|alpha|/cutoff} with xi = 1, alpha = 2
    const double want = 0.1 * kPi * 2.0 * std::exp(-0.25);
    CHECK(r.gamma_minus == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.gamma_minus == doctest::Approx(0.48933).epsilon(1e-4));
    CHECK(r.gamma_plus == 0.0);
    CHECK(r.gamma_d == 0.0);
}

TEST_CASE("sign switch follows the frequency through the sweep") {
    const Protocol p = Protocol::landau_zener(1.0, 0.2);
    const LriFrame frame = solve_lri(p, adiabatic_init_regularized(p));
    const CouplingEvaluator coeffs(frame);
    const BathSpec cold{0.1, 8.0, 0.0, 0.0};
    bool saw_minus = false, saw_plus = false;
    double max_near_zero = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = -40.0 + 80.0 * i / 400.0;
        const RateSet r = lz_rates(coeffs, cold, t);
        if (r.degenerate_y) continue;
        if (r.alpha12_y > 0.0) {
            CHECK(r.gamma_plus == 0.0);
            if (r.gamma_minus > 0.0) saw_minus = true;
        } else if (r.alpha12_y < 0.0) {
            CHECK(r.gamma_minus == 0.0);
            if (r.gamma_plus > 0.0) saw_plus = true;
        }
        if (std::abs(r.alpha12_y) < 0.05)
            max_near_zero = std::max(max_near_zero, r.gamma_minus + r.gamma_plus);
    }
    CHECK(saw_minus);
    CHECK(saw_plus);
    // the rate switches continuously: J -> 0 with the frequency
    CHECK(max_near_zero <= 0.1 * kPi * 0.05 * 1.01);
}

TEST_CASE("dephasing-model closed forms") {
    const BathSpec b{1.0, 20.0, 0.0, 0.0};
    const DephasingRates zero = dephasing_rates(b, 0.0);
    CHECK(zero.real == 0.0);
    CHECK(zero.imag == 0.0);

    const DephasingRates r1 = dephasing_rates(b, 1.0);
    CHECK(r1.real == doctest::Approx(400.0 / 401.0).epsilon(1e-12));
    CHECK(r1.real == doctest::Approx(0.99751).epsilon(1e-4));

    // long-time limit of the Lamb coefficient
    const DephasingRates far = dephasing_rates(b, 1e6);
    CHECK(far.imag == doctest::Approx(b.kappa * b.omega_c).epsilon(1e-9));
    CHECK(far.real <= 1e-4);

    const BathSpec warm{1.0, 20.0, 0.5, 0.0};
    CHECK_THROWS_AS(dephasing_rates(warm, 1.0), UnsupportedConfigError);
    CHECK_THROWS_AS(dephasing_rates(b, -1.0), std::invalid_argument);

    const RateSet rs = dephasing_rate_set(b, 1.0);
    CHECK(rs.gamma_d == doctest::Approx(0.25 * r1.real));
    CHECK(rs.lamb_d == doctest::Approx(r1.imag));
    CHECK(rs.gamma_plus == 0.0);
}

TEST_CASE("memory kernel on the engineered dephasing channel") {
    const BathSpec b{1.0, 20.0, 0.0, 0.0};
    const ChannelSignal sig = dephasing_model_signal();
    for (double xt : {0.5, 1.0, 3.0, 10.0}) {
        const double t = xt / b.omega_c;
        const cplx got = memory_kernel_rate(sig, sig, b, t, t);
        const DephasingRates want = dephasing_rates(b, t);
        CHECK(std::abs(std::real(got) - want.real) / want.real <= 1e-3);
        // the imaginary part integrates the Lamb coefficient with opposite sign
        CHECK(std::abs(std::imag(got)) > 0.0);
    }
    const ChannelSignal off{[](double) { return 0.0; }, [](double) { return 0.0; }};
    CHECK(memory_kernel_rate(off, off, b, 0.3, 0.3) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(memory_kernel_rate(sig, sig, b, 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("memory kernel against an independent fixed-step integral") {
    const Protocol p = Protocol::sine_squared(1.0, 1.0, 1.0, 0.0, 2.5);
    const LriFrame frame = solve_lri(p, adiabatic_init_regularized(p), {1e-10, 1e-12});
    const CouplingEvaluator coeffs(frame);
    const BathSpec b{1.0, 20.0, 0.0, 0.0};
    const double t = 2.0;
    const double s_max = std::min(t, 10.0 / b.omega_c);
    const auto sig = make_signal(coeffs, Channel::x, 1, 1);
    const cplx got = memory_kernel_rate(sig, sig, b, t, s_max);

    // Simpson rule at fixed step over the same integrand
    const int n = 20000;  // even
    cplx acc{0, 0};
    auto f = [&](double s) -> cplx {
        return sig.xi(t) * sig.xi(t - s) *
               std::exp(iu * (sig.theta(t - s) - sig.theta(t))) * correlation(b, s);
    };
    for (int i = 0; i <= n; ++i) {
        const double s = s_max * i / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(s);
    }
    acc *= s_max / (3.0 * n);
    CHECK(std::abs(got - acc) <= 1e-6 * std::max(1.0, std::abs(acc)));
}

TEST_CASE("memory-kernel rate set reduces to slow-phase on a static frame") {
    const LriFrame frame = static_frame(0.6, 0.8, 20.0);
    const CouplingEvaluator coeffs(frame);
    const BathSpec cold{0.05, 8.0, 0.0, 0.0};
    const double t = 19.0;  // long history so the kernel integral saturates
    const RateSet mk = memory_kernel_rate_set(coeffs, cold, t, 15.0, ChannelSet{false, true});
    const RateSet sp = slow_phase_rates(coeffs, cold, t, ChannelSet{false, true});
    CHECK(mk.gamma_minus == doctest::Approx(sp.gamma_minus).epsilon(0.02));
    CHECK(std::abs(mk.gamma_plus - sp.gamma_plus) <= 0.02 * sp.gamma_minus);
}
