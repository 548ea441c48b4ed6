#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmme/driving.hpp"

using namespace dmme;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sine-squared evaluation") {
    const Protocol p = Protocol::sine_squared(1.0, 1.0, 1.0, 0.0, 2.0);
    const auto s = p.eval(kPi / 2.0);
    CHECK(s.delta == doctest::Approx(1.0));
    CHECK(s.omega == doctest::Approx(1.0));  // sin^2(pi/2)
    CHECK(s.ddelta == 0.0);
    CHECK(s.domega == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("landau-zener evaluation") {
    const Protocol p = Protocol::landau_zener(1.0, 2.0);
    CHECK(p.t_start() == doctest::Approx(-40.0));
    CHECK(p.t_end() == doctest::Approx(40.0));
    const auto s = p.eval(0.0);
    CHECK(s.delta == 0.0);
    CHECK(s.omega == doctest::Approx(1.0));
    CHECK(s.ddelta == doctest::Approx(0.5));
    CHECK(s.domega == 0.0);
}

TEST_CASE("constant evaluation") {
    const Protocol p = Protocol::constant(1.0, 0.0, 0.0, 3.0);
    const auto s = p.eval(1.7);
    CHECK(s.delta == 1.0);
    CHECK(s.omega == 0.0);
    CHECK(s.ddelta == 0.0);
    CHECK(s.domega == 0.0);
}

TEST_CASE("hamiltonian values") {
    const Protocol a = Protocol::constant(1.0, 0.0, 0.0, 1.0);
    CHECK(frobenius_norm(a.hamiltonian(0.5) - sigma_z()) <= 1e-15);
    const Protocol b = Protocol::constant(0.0, 1.0, 0.0, 1.0);
    CHECK(frobenius_norm(b.hamiltonian(0.5) - sigma_x()) <= 1e-15);
    // v = 1, Omega0 = 2/sqrt(v), t = 2: Delta = 1, Omega = 1
    const Protocol lz = Protocol::landau_zener(1.0, 2.0);
    const Mat2 want{1, 1, 1, -1};
    CHECK(frobenius_norm(lz.hamiltonian(2.0) - want) <= 1e-15);
}

TEST_CASE("hamiltonian is Hermitian across families") {
    const Protocol ps[] = {Protocol::constant(0.3, -1.2, 0.0, 2.0),
                           Protocol::sine_squared(1.0, 0.7, 1.3, 0.0, 2.0),
                           Protocol::landau_zener(2.0, 0.5)};
    for (const auto& p : ps) {
        for (int i = 0; i <= 50; ++i) {
            const double t = p.t_start() + (p.t_end() - p.t_start()) * i / 50.0;
            CHECK(hermiticity_defect(p.hamiltonian(t)) <= 1e-14);
        }
    }
}

TEST_CASE("analytic derivatives match finite differences") {
    const Protocol ps[] = {Protocol::sine_squared(0.4, 1.1, 2.3, 0.0, 3.0),
                           Protocol::landau_zener(1.7, 0.9)};
    for (const auto& p : ps) {
        const double span = p.t_end() - p.t_start();
        const double h = 1e-6 * span;
        for (int i = 1; i < 40; ++i) {
            const double t = p.t_start() + span * i / 40.0;
            const auto s = p.eval(t);
            const auto sp = p.eval(t + h);
            const auto sm = p.eval(t - h);
            const double dd = (sp.delta - sm.delta) / (2.0 * h);
            const double od = (sp.omega - sm.omega) / (2.0 * h);
            const double scale = std::max({1.0, std::abs(s.ddelta), std::abs(s.domega)});
            CHECK(std::abs(dd - s.ddelta) / scale <= 1e-6);
            CHECK(std::abs(od - s.domega) / scale <= 1e-6);
        }
    }
}

TEST_CASE("out-of-window times are rejected beyond the probe tolerance") {
    const Protocol p = Protocol::constant(1.0, 1.0, 0.0, 1.0);
    CHECK_NOTHROW(p.eval(1.0 + 1e-10));  // integrator probing slack
    CHECK_THROWS_AS(p.eval(1.1), std::out_of_range);
    CHECK_THROWS_AS(p.eval(-0.1), std::out_of_range);
}

TEST_CASE("tabulated protocol tracks a smooth curve") {
    std::vector<double> ts, ds, os;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double t = 3.0 * i / (n - 1);
        ts.push_back(t);
        ds.push_back(0.5 + 0.1 * t);
        const double s = std::sin(1.3 * t);
        os.push_back(s * s);
    }
    const Protocol p = Protocol::tabulated(ts, ds, os);
    CHECK(p.family() == ProtocolFamily::tabulated);
    for (int i = 1; i < 60; ++i) {
        const double t = 3.0 * i / 60.0;
        const auto s = p.eval(t);
        const double sv = std::sin(1.3 * t);
        CHECK(std::abs(s.delta - (0.5 + 0.1 * t)) <= 1e-9);
        CHECK(std::abs(s.omega - sv * sv) <= 1e-6);
        // monotone cubic slopes are second-order accurate; derivatives of a
        // tabulated protocol are correspondingly coarser than the values
        CHECK(std::abs(s.domega - 2.0 * 1.3 * sv * std::cos(1.3 * t)) <= 1e-3);
    }
}

TEST_CASE("tabulated interpolation does not overshoot monotone data") {
    const std::vector<double> ts{0, 1, 2, 3, 4, 5};
    const std::vector<double> ds{0, 0, 0.05, 0.95, 1, 1};  // step-like, monotone
    const std::vector<double> os(6, 0.25);
    const Protocol p = Protocol::tabulated(ts, ds, os);
    for (int i = 0; i <= 1000; ++i) {
        const double t = 5.0 * i / 1000.0;
        const auto s = p.eval(t);
        CHECK(s.delta >= -1e-12);
        CHECK(s.delta <= 1.0 + 1e-12);
    }
}

TEST_CASE("tabulated input validation") {
    CHECK_THROWS_AS(Protocol::tabulated({0, 1, 1, 2}, {0, 0, 0, 0}, {0, 0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Protocol::tabulated({0, 1, 2}, {0, 0, 0}, {0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Protocol::landau_zener(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Protocol::constant(0, 0, 1.0, 1.0), std::invalid_argument);
}
