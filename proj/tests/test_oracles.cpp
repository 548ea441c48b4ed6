#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmme/errors.hpp"
#include "dmme/oracles.hpp"

using namespace dmme;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("survival probability closed form") {
    // dissipation-free reduction
    const LzPrediction free_case = lz_exact(2.0, 0.7, 0.0, 8.0);
    CHECK(free_case.w_squared == doctest::Approx(0.49));
    CHECK(free_case.p11 == doctest::Approx(std::exp(-kPi * 0.49 / 4.0)));

    const LzPrediction fig3 = lz_exact(1.0, 2.0, 0.1, 8.0);
    CHECK(fig3.w_squared == doctest::Approx(5.6));
    CHECK(fig3.p11 == doctest::Approx(std::exp(-2.8 * kPi)));
    CHECK(fig3.p11 == doctest::Approx(1.51e-4).epsilon(2e-3));

    const LzPrediction fig4 = lz_exact(1.0, 0.2, 0.1, 8.0);
    CHECK(fig4.w_squared == doctest::Approx(1.64));
    CHECK(fig4.p11 == doctest::Approx(std::exp(-0.82 * kPi)));
    CHECK(fig4.p11 == doctest::Approx(7.62e-2).epsilon(2e-3));

    CHECK_THROWS_AS(lz_exact(0.0, 1.0, 0.1, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(lz_exact(-1.0, 1.0, 0.1, 8.0), std::invalid_argument);
}

TEST_CASE("survival probability monotonicity") {
    const double omegas[] = {0.2, 0.5, 1.0, 2.0};
    const double kappas[] = {0.0, 0.05, 0.1, 0.3};
    const double cutoffs[] = {2.0, 4.0, 8.0};
    const double vs[] = {0.5, 1.0, 2.0};
    for (double k : kappas)
        for (double c : cutoffs)
            for (double v : vs) {
                double prev = 2.0;
                for (double w : omegas) {
                    const double p = lz_exact(v, w, k, c).p11;
                    CHECK(p < prev);  // decreasing in omega0
                    prev = p;
                }
            }
    CHECK(lz_exact(1.0, 1.0, 0.2, 8.0).p11 < lz_exact(1.0, 1.0, 0.1, 8.0).p11);
    CHECK(lz_exact(1.0, 1.0, 0.1, 10.0).p11 < lz_exact(1.0, 1.0, 0.1, 8.0).p11);
    CHECK(lz_exact(2.0, 1.0, 0.1, 8.0).p11 > lz_exact(1.0, 1.0, 0.1, 8.0).p11);
}

TEST_CASE("decoherence function") {
    const BathSpec b{1.0, 20.0, 0.0, 0.0};
    CHECK(dephasing_gamma_e(b, 0.0) == 0.0);
    CHECK(dephasing_gamma_e(b, 1.0) == doctest::Approx(0.5 * std::log(401.0)));
    CHECK(std::exp(-dephasing_gamma_e(b, 1.0)) == doctest::Approx(0.0500).epsilon(2e-3));

    // monotone nondecreasing in t and linear in kappa
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double g = dephasing_gamma_e(b, 0.02 * i);
        CHECK(g >= prev);
        prev = g;
    }
    const BathSpec half{0.5, 20.0, 0.0, 0.0};
    CHECK(dephasing_gamma_e(half, 0.3) == doctest::Approx(0.5 * dephasing_gamma_e(b, 0.3)));

    const BathSpec warm{1.0, 20.0, 0.1, 0.0};
    CHECK_THROWS_AS(dephasing_gamma_e(warm, 1.0), UnsupportedConfigError);
}
