#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bosegas/grids.hpp"

namespace bosegas::fredholm {

using cplx = std::complex<double>;
using Kernel = std::function<double(double, double)>;

// Per-order terms t_n of a generating-function series, their sum and a
// heuristic truncation error |t_{n_max}|. t_0 is always 1.
struct SeriesResult {
    std::vector<double> terms{1.0};
    double total = 1.0;
    int n_max = 0;
    double tail_estimate = 0.0;
    double imag_defect = 0.0;  // largest |Im| discarded from any term
};

enum class SeriesMode { determinant, permanent };

// det(I + lambda * D^{1/2} K D^{1/2}) on the grid, D = diag(weights);
// the symmetric square-root weighting keeps the discretized operator
// symmetric. Computed by LU factorization.
double fredholm_det_nystrom(const Kernel& kernel, double lambda, const grids::LineGrid& grid);
cplx fredholm_det_nystrom(const Kernel& kernel, cplx lambda, const grids::LineGrid& grid);

// Truncated series of det(1 + lambda K-hat) (determinant mode) or of the
// permanent analogue 1/det(1 - lambda K-hat) (permanent mode):
//   t_n = (lambda 2pi)^n / n! \int...\int prod dp_j/2pi det_or_perm[K(p_j,p_k)].
// Terms are assembled from the eigenvalues eta_i of the discretized operator:
// elementary symmetric polynomials e_n(lambda*eta) in determinant mode,
// complete homogeneous h_n(lambda*eta) in permanent mode, which is the same
// quadrature discretization evaluated without n-fold loops. n_max <= 8.
SeriesResult fredholm_series(const Kernel& kernel, double lambda, int n_max,
                             const grids::LineGrid& grid,
                             SeriesMode mode = SeriesMode::determinant);

// Direct n-fold tensor-quadrature evaluation of the same terms, kept as the
// slow cross-check of the eigenvalue route. n_max <= 3.
SeriesResult fredholm_series_tensor(const Kernel& kernel, double lambda, int n_max,
                                    const grids::LineGrid& grid,
                                    SeriesMode mode = SeriesMode::determinant);

// Independent oracle for the permanent series: when the spectral radius of
// lambda * D^{1/2} K D^{1/2} is below 0.99 the series sums to
// 1/det(I - lambda * D^{1/2} K D^{1/2}). Throws on divergence.
double permanent_resolvent_oracle(const Kernel& kernel, double lambda,
                                  const grids::LineGrid& grid);

// Eigenvalues of D^{1/2} K D^{1/2} (symmetric kernels only), ascending.
std::vector<double> operator_eigenvalues(const Kernel& kernel, const grids::LineGrid& grid);

}  // namespace bosegas::fredholm
