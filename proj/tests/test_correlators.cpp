#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bosegas/correlators.hpp"
#include "oracles.hpp"

using namespace bosegas;
using correlators::LimitRegime;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("density against adaptive quadrature") {
    const double df = correlators::density_closed(LimitRegime::impenetrable, 1.0, 0.0);
    const double df_ref = oracles::integral_real_line(
        [](double p) { return 1.0 / (1.0 + std::exp(p * p)) / kTwoPi; });
    CHECK(df == doctest::Approx(df_ref).epsilon(1e-12));

    const double db = correlators::density_closed(LimitRegime::free_bosons, 1.0, -1.0);
    const double db_ref = oracles::integral_real_line(
        [](double p) { return 1.0 / std::expm1(p * p + 1.0) / kTwoPi; });
    CHECK(db == doctest::Approx(db_ref).epsilon(1e-12));
}

TEST_CASE("boltzmann tail of the degenerate density") {
    // mu = -30, T = 1: D ~ e^{mu/T} sqrt(pi T)/(2 pi)
    const double d = correlators::density_closed(LimitRegime::impenetrable, 1.0, -30.0);
    const double want = std::exp(-30.0) * std::sqrt(std::numbers::pi) / kTwoPi;
    CHECK(d == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("g2 closed form special points") {
    // impenetrable at x = 0: complete antibunching
    const double g2f0 = correlators::g2_closed(LimitRegime::impenetrable, 1.0, 0.0, 0.0);
    CHECK(std::abs(g2f0) < 1e-12);

    // free at x = 0: g2 = 2 D^2
    const double db = correlators::density_closed(LimitRegime::free_bosons, 1.0, -1.0);
    const double g2b0 = correlators::g2_closed(LimitRegime::free_bosons, 1.0, -1.0, 0.0);
    CHECK(g2b0 == doctest::Approx(2.0 * db * db).epsilon(1e-10));
}

TEST_CASE("g2 fourier integral against adaptive quadrature") {
    const double x = 1.0;
    const double got = correlators::g2_closed(LimitRegime::impenetrable, 1.0, 0.0, x);
    const double d = oracles::integral_real_line(
        [](double p) { return 1.0 / (1.0 + std::exp(p * p)) / kTwoPi; });
    const double four = oracles::integral_real_line(
        [x](double p) { return std::cos(p * x) / (1.0 + std::exp(p * p)) / kTwoPi; });
    CHECK(got == doctest::Approx(d * d - four * four).epsilon(1e-10));
}

TEST_CASE("series route equals closed route") {
    for (double T : {0.5, 1.0, 2.0})
        for (double x : {0.25, 0.5, 1.0, 2.0}) {
            auto rf = correlators::correlators_from_series(LimitRegime::impenetrable, T, 0.0, x);
            const double cf = correlators::g2_closed(LimitRegime::impenetrable, T, 0.0, x);
            CAPTURE(T);
            CAPTURE(x);
            CHECK(std::abs(rf.g2 - cf) <= 1e-8);
            CHECK(rf.density ==
                  doctest::Approx(correlators::density_closed(LimitRegime::impenetrable, T, 0.0))
                      .epsilon(1e-10));

            auto rb = correlators::correlators_from_series(LimitRegime::free_bosons, T, -1.0, x);
            const double cb = correlators::g2_closed(LimitRegime::free_bosons, T, -1.0, x);
            CHECK(std::abs(rb.g2 - cb) <= 1e-8);
        }
}

TEST_CASE("density from the n=1 term is x-independent") {
    auto a = correlators::correlators_from_series(LimitRegime::impenetrable, 1.0, 0.0, 0.3);
    auto b = correlators::correlators_from_series(LimitRegime::impenetrable, 1.0, 0.0, 2.1);
    CHECK(a.density == doctest::Approx(b.density).epsilon(1e-13));
}

TEST_CASE("connected correlator signs and decay") {
    const double df = correlators::density_closed(LimitRegime::impenetrable, 1.0, 0.0);
    const double db = correlators::density_closed(LimitRegime::free_bosons, 1.0, -1.0);
    for (int i = 1; i <= 50; ++i) {
        const double x = 0.1 * i;
        const double cf =
            correlators::g2_closed(LimitRegime::impenetrable, 1.0, 0.0, x) - df * df;
        const double cb =
            correlators::g2_closed(LimitRegime::free_bosons, 1.0, -1.0, x) - db * db;
        CHECK(cf <= 1e-14);
        CHECK(cb >= -1e-14);
    }
    // decay: g2 -> D^2
    const double far =
        correlators::g2_closed(LimitRegime::impenetrable, 1.0, 0.0, 20.0) - df * df;
    CHECK(std::abs(far) <= 1e-3 * df * df);
}

TEST_CASE("free regime guards") {
    CHECK_THROWS_AS((void)correlators::density_closed(LimitRegime::free_bosons, 1.0, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS((void)correlators::g2_closed(LimitRegime::free_bosons, 1.0, 0.0, 1.0),
                    std::domain_error);
}
