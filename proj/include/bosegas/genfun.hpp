#pragma once

#include <complex>

#include "bosegas/densityfn.hpp"
#include "bosegas/fredholm.hpp"
#include "bosegas/grids.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::genfun {

using cplx = std::complex<double>;
using fredholm::SeriesResult;

// ---------------------------------------------------------------------------
// Limit regimes: <e^{phi Q(x)}> as a Fredholm determinant of V_F (impenetrable
// bosons) or a permanent series of V_B (free bosons), both with
// lambda = (e^phi - 1)/2pi.
// ---------------------------------------------------------------------------

enum class ImpenetrableMethod { nystrom, series };
enum class FreeMethod { perm_series, resolvent };

// Window grid wide enough that the statistical weight is < 1e-16 outside.
grids::LineGrid limit_grid(double T, double mu, int m = 192);

SeriesResult genfun_impenetrable_series(double T, double mu, double x, double phi,
                                        int n_max = 8, int m = 192);
double genfun_impenetrable(double T, double mu, double x, double phi,
                           ImpenetrableMethod method, int n_max = 8, int m = 192);

SeriesResult genfun_free_series(double T, double mu, double x, double phi, int n_max = 8,
                                int m = 192);
double genfun_free(double T, double mu, double x, double phi, FreeMethod method,
                   int n_max = 8, int m = 192);

// ---------------------------------------------------------------------------
// Generic coupling: truncated series of the multiple-integral representation
//
//  t_n = 1/(n!)^2 [prod_j \int dp_j/2pi e^{i p_j x}/(1+e^{eps(p_j)/T})
//                         \int_{R+i d} dq_j/2pi e^{-i q_j x}]
//        [prod_{j,k} (p_j-q_k-ic)/(q_j-q_k-ic)] det[M(p_j,q_k)] det[G(p_j,q_k)]
// ---------------------------------------------------------------------------

struct GenericOptions {
    // The integrand is analytic in every q_j above the real axis (the apparent
    // M poles at q = p + ic cancel against the set products), so the default
    // strategy evaluates the q integrals on an elevated contour of height
    // ~1/(1+x) with descending tails, which stays uniformly accurate down to
    // very small coupling. spec_contour keeps the caller's low contour and
    // plain tensor quadrature; it is adequate for c >~ 1.
    enum class Strategy { elevated, spec_contour };
    Strategy strategy = Strategy::elevated;

    int threads = 1;

    // elevated-path resolution
    double elevation = -1.0;  // <= 0: use min(1,...)/(1+x)
    int q_core_panel_nodes = 8;
    int q_wing_nodes = 48;
    int pair_panel_nodes = 6;   // graded difference rules (n = 2)
    int p_r_nodes = 48;         // center-of-mass rule (n = 2)
    int p_tuple_nodes = 24;     // base-grid subsampling for n = 3
};

// Per-order complex terms t_1..t_n of the generic series (t_0 = 1 omitted).
// phi may be complex (used by finite-difference correlator diagnostics).
std::vector<cplx> generic_terms(const thermo::GasParams& params,
                                const thermo::DressedEnergy& eps, double x, cplx phi,
                                int n_max, const grids::ContourSpec& contour,
                                const GenericOptions& opts = {});

SeriesResult genfun_generic(const thermo::GasParams& params, const thermo::DressedEnergy& eps,
                            double x, double phi, int n_max, const grids::ContourSpec& contour,
                            const grids::LineGrid& grid, const GenericOptions& opts = {});

// Contour shift heuristic: stay below the q = p + ic line of the conventional
// low contour and bound the e^{shift*x} growth of e^{-iqx}.
double default_contour_shift(double c, double x);

}  // namespace bosegas::genfun
