#include "bosegas/correlators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosegas/genfun.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::correlators {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double weight(LimitRegime regime, double T, double mu, double p) {
    if (regime == LimitRegime::impenetrable) return thermo::fermi_weight_bare(T, mu, p);
    return thermo::bose_weight(T, mu, p);
}

void check_params(LimitRegime regime, double T, double mu) {
    if (!(T > 0.0)) throw std::invalid_argument("correlators: T must be positive");
    if (regime == LimitRegime::free_bosons && !(mu < 0.0))
        throw std::domain_error(
            "correlators: the chemical potential must be restricted to the physical range "
            "mu < 0");
}

}  // namespace

double density_closed(LimitRegime regime, double T, double mu, int m) {
    check_params(regime, T, mu);
    auto grid = genfun::limit_grid(T, mu, m);
    return grid.integrate([&](double p) { return weight(regime, T, mu, p); }) / kTwoPi;
}

double g2_closed(LimitRegime regime, double T, double mu, double x, int m) {
    check_params(regime, T, mu);
    if (!(x >= 0.0)) throw std::invalid_argument("g2_closed: x must be non-negative");
    auto grid = genfun::limit_grid(T, mu, m);
    const double d = grid.integrate([&](double p) { return weight(regime, T, mu, p); }) / kTwoPi;
    const double four =
        grid.integrate([&](double p) { return weight(regime, T, mu, p) * std::cos(p * x); }) /
        kTwoPi;
    return (regime == LimitRegime::impenetrable) ? d * d - four * four : d * d + four * four;
}

CorrelatorResult correlators_from_series(LimitRegime regime, double T, double mu, double x,
                                         int m) {
    check_params(regime, T, mu);
    if (!(x >= 0.0))
        throw std::invalid_argument("correlators_from_series: x must be non-negative");
    auto grid = genfun::limit_grid(T, mu, m);
    const int mm = (int)grid.size();

    std::vector<double> w(mm);
    for (int i = 0; i < mm; ++i) w[i] = weight(regime, T, mu, grid.nodes[i]) * grid.weights[i];

    // n = 1 term is x * \int dp/2pi w(p); its d_x is the density and its
    // d^2_x vanishes
    double density = 0.0;
    for (int i = 0; i < mm; ++i) density += w[i];
    density /= kTwoPi;

    // g2 = (1/2) d^2_x [t~_1 + 2 t~_2] with
    // t~_2 = (1/2) \int\int dp1 dp2/(2pi)^2 w1 w2 (x^2 -+ V(p1,p2)^2)
    const double sign = (regime == LimitRegime::impenetrable) ? -1.0 : 1.0;
    double g2 = 0.0;
    for (int i = 0; i < mm; ++i) {
        double row = 0.0;
        for (int j = 0; j < mm; ++j) {
            const double d = grid.nodes[i] - grid.nodes[j];
            row += w[j] * (2.0 + sign * 2.0 * std::cos(d * x));
        }
        g2 += w[i] * row;
    }
    g2 *= 0.5 / (kTwoPi * kTwoPi);

    CorrelatorResult out;
    out.regime = regime;
    out.x = x;
    out.density = density;
    out.g2 = g2;
    out.connected = g2 - density * density;
    return out;
}

}  // namespace bosegas::correlators
