#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bosegas/grids.hpp"
#include "oracles.hpp"

using namespace bosegas;
using grids::MapKind;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

TEST_CASE("gauss_legendre small orders") {
    auto g1 = grids::gauss_legendre(1, -1.0, 1.0);
    CHECK(g1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    auto g2 = grids::gauss_legendre(2, -1.0, 1.0);
    CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.nodes[1] == doctest::Approx(+1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre polynomial exactness") {
    auto g = grids::gauss_legendre(16, -1.0, 1.0);
    const double v = g.integrate([](double x) { return std::pow(x, 8); });
    CHECK(std::abs(v - 2.0 / 9.0) < 1e-15);

    // degree 2m-1 exactness: x^31 integrates to 0 on a symmetric interval
    const double odd = g.integrate([](double x) { return std::pow(x, 31); });
    CHECK(std::abs(odd) < 1e-14);
}

TEST_CASE("gauss_legendre parameter validation") {
    CHECK_THROWS_AS(grids::gauss_legendre(0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(grids::gauss_legendre(4, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("finite interval constant integration") {
    auto g = grids::gauss_legendre(12, -2.5, 7.0);
    CHECK(g.integrate([](double) { return 1.0; }) == doctest::Approx(9.5).epsilon(1e-14));
}

TEST_CASE("line_grid integrates a unit gaussian across scales") {
    for (MapKind kind : {MapKind::rational_map, MapKind::truncated_window}) {
        for (double scale : {0.5, 1.0, 2.0, 5.0}) {
            auto g = grids::line_grid(64, scale, kind);
            const double v =
                g.integrate([](double p) { return std::exp(-p * p); }) / kSqrtPi;
            CAPTURE((int)kind);
            CAPTURE(scale);
            CHECK(std::abs(v - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("line_grid odd integrand vanishes") {
    auto g = grids::line_grid(64, 1.0, MapKind::rational_map);
    const double v = g.integrate([](double p) { return p * std::exp(-p * p); });
    CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("line_grid fermi integral against adaptive oracle") {
    auto g = grids::line_grid(128, grids::default_scale(1.0, 0.0), MapKind::rational_map);
    auto f = [](double p) { return 1.0 / (1.0 + std::exp(p * p)) / (2.0 * kPi); };
    const double v = g.integrate(f);
    const double ref = oracles::integral_real_line(f, 1e-13);
    CHECK(v == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("line_grid invariants") {
    for (MapKind kind : {MapKind::rational_map, MapKind::truncated_window}) {
        auto g = grids::line_grid(96, 1.5, kind);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);
        for (double w : g.weights) CHECK(w > 0.0);
    }
    CHECK_THROWS_AS(grids::line_grid(1, 1.0, MapKind::rational_map), std::invalid_argument);
    CHECK_THROWS_AS(grids::line_grid(32, -1.0, MapKind::rational_map), std::invalid_argument);
}

TEST_CASE("node doubling stability for smooth integrands") {
    auto coarse = grids::line_grid(96, 1.0, MapKind::rational_map);
    auto fine = grids::line_grid(192, 1.0, MapKind::rational_map);
    auto f = [](double p) { return std::cos(p) * std::exp(-p * p / 2.0); };
    CHECK(std::abs(coarse.integrate(f) - fine.integrate(f)) < 1e-11);
}

TEST_CASE("contour_nodes translates a gauss rule") {
    grids::ContourSpec spec{0.5, 1.0, 2};
    auto nodes = grids::contour_nodes(spec);
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].first.real() == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(nodes[0].first.imag() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(nodes[1].first.real() == doctest::Approx(+1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(nodes[0].second.real() == doctest::Approx(nodes[1].second.real()).epsilon(1e-14));

    CHECK_THROWS_AS(grids::contour_nodes(grids::ContourSpec{-0.1, 1.0, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(grids::contour_nodes(grids::ContourSpec{0.1, 1.0, 1}),
                    std::invalid_argument);
}

TEST_CASE("shifted contour integral of an entire function") {
    // e^{-q^2} integrated along R + i*delta equals sqrt(pi) for any shift
    for (double shift : {0.25, 0.5}) {
        grids::ContourSpec spec{shift, 8.0, 160};
        auto nodes = grids::contour_nodes(spec);
        std::complex<double> acc = 0.0;
        for (auto& [q, w] : nodes) acc += w * std::exp(-q * q);
        CHECK(std::abs(acc - kSqrtPi) < 1e-12);
    }
}

TEST_CASE("winged path reproduces entire-function integrals") {
    auto path = grids::winged_path(0.5, 8.0, 1.0);
    const std::complex<double> v =
        path.integrate([](std::complex<double> q) { return std::exp(-q * q); });
    CHECK(std::abs(v - kSqrtPi) < 1e-12);
}

TEST_CASE("winged path handles pure algebraic decay") {
    // \int dq/(q^2+9) along R + 0.5i = pi/3 (pole at 3i above the contour is
    // outside the closed lower region)
    auto path = grids::winged_path(0.5, 12.0, 0.0, 64, 64);
    const std::complex<double> v =
        path.integrate([](std::complex<double> q) { return 1.0 / (q * q + 9.0); });
    CHECK(std::abs(v - kPi / 3.0) < 1e-9);
}

TEST_CASE("contour shift independence for analytic integrands") {
    auto f = [](std::complex<double> q) {
        return std::exp(std::complex<double>(0, -1) * q) / (q * q + 4.0);
    };
    auto a = grids::winged_path(0.6, 10.0, 1.0).integrate(f);
    auto b = grids::winged_path(0.3, 10.0, 1.0).integrate(f);
    CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("adaptive window doubling converges") {
    auto evaluate = [](double window) {
        auto path = grids::winged_path(0.4, window, 1.0);
        return path.integrate([](std::complex<double> q) {
            return std::exp(std::complex<double>(0, -1) * q) / (q * q + 1.0);
        });
    };
    const auto v = grids::adaptive_window_integral(evaluate, 6.0, 1e-10);
    // exact: closing downward around the pole at -i gives pi/e... the
    // contour at height 0.4 encloses nothing above, residue at q = -i:
    // 2pi i * e^{-i(-i)}/(-2i) = -pi e^{-1}, with orientation -> pi/e
    CHECK(std::abs(v - kPi / std::numbers::e) < 1e-9);
}

TEST_CASE("graded half rule integrates sharp lorentzians") {
    std::vector<double> n, w;
    grids::graded_half_rule(5e-4, 10.0, 8, n, w);
    double acc = 0.0;
    const double c = 1e-3;
    for (std::size_t i = 0; i < n.size(); ++i) acc += w[i] * c / (n[i] * n[i] + c * c);
    // half of the arctan mass: integral over (0, 10] of c/(s^2+c^2) ds
    const double exact = std::atan(10.0 / c);
    CHECK(acc == doctest::Approx(exact).epsilon(1e-10));
}
