#pragma once

#include <cstdint>

#include "bosegas/grids.hpp"

namespace bosegas::identities {

// Numerical checkers for the structural identities behind the limit
// derivations. Each returns a scaled residual; the test suite and the
// `verify` CLI command assert thresholds on them.

// Permutation-sum identity: for real sets {p}, {q} drawn without collisions,
//   [prod_{a<b}(q_b-q_a)] [prod_{a != b}(p_a-p_b+ic)] sum_s sign(s) I(p_s, q)
//     = [prod_{a,b}(p_a-q_b)(p_a-q_b+ic)] det[1/((p_j-q_k)(p_j-q_k+ic))]
// with I(p,q) = prod_a [prod_{b<a}(p_a-q_b+ic) prod_{b>a}(p_a-q_b)]
//               / prod_{a<b}(p_b-p_a+ic).
double check_nicelemma(int n, double c, std::uint64_t seed);

// det[1/(p_j-q_k)^2] / det[1/(p_j-q_k)] = sum_s prod_a 1/(p_s(a)-q_a).
double check_quotient_identity(int n, std::uint64_t seed);

// \int_{R+i shift} dq/2pi e^{-iqx}/((u-q)(v-q)) = -V(u,v) e^{-i(u+v)x/2}.
double check_qint(double u, double v, double x, const grids::ContourSpec& contour);

// n-th free-boson series term from the squared permutation-sum form under
// tensor contour quadrature versus the factorized permanent form.
double check_symmetrization(int n, double T, double mu, double x, std::uint64_t seed,
                            double phi = 0.2);

}  // namespace bosegas::identities
