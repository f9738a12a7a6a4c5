#pragma once

#include "bosegas/grids.hpp"

namespace bosegas::correlators {

enum class LimitRegime { impenetrable, free_bosons };

struct CorrelatorResult {
    LimitRegime regime;
    double x = 0.0;
    double density = 0.0;    // D
    double g2 = 0.0;         // <j(0) j(x)>
    double connected = 0.0;  // g2 - D^2
};

// D = \int dp/2pi w(p), with w the Fermi or Bose weight.
double density_closed(LimitRegime regime, double T, double mu, int m = 512);

// g2 = D^2 -+ [\int dp/2pi w(p) e^{ipx}]^2; the Fourier integral is real
// because w is even. Minus sign for impenetrable bosons, plus for free.
double g2_closed(LimitRegime regime, double T, double mu, double x, int m = 512);

// Correlators extracted from the generating-function series: the phi
// derivatives pick out the n = 1 and n = 2 terms exactly, and the x
// derivatives of the n = 2 term are taken analytically under the integral
// (d^2/dx^2 of x^2 -+ V(p1,p2)^2 is 2 -+ 2 cos((p1-p2)x)).
CorrelatorResult correlators_from_series(LimitRegime regime, double T, double mu, double x,
                                         int m = 384);

}  // namespace bosegas::correlators
