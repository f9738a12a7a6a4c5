#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace bosegas::kernels {

using cplx = std::complex<double>;

// Interval length x >= 0 and generating parameter phi of <e^{phi Q(x)}>.
struct QueryPoint {
    double x = 0.0;
    cplx phi = 0.0;

    void validate() const;
};

enum class Provenance { V_F, V_B, M, G, custom };

// Small dense square matrix sampled from a two-point kernel.
// n = 0 is the empty matrix (determinant and permanent are both 1).
template <class Scalar>
struct KernelMatrix {
    int n = 0;
    std::vector<Scalar> entries;  // row-major, n*n
    Provenance provenance = Provenance::custom;

    KernelMatrix() = default;
    explicit KernelMatrix(int order, Provenance prov = Provenance::custom)
        : n(order), entries((std::size_t)order * order, Scalar{}), provenance(prov) {}

    Scalar& at(int i, int j) { return entries[(std::size_t)i * n + j]; }
    const Scalar& at(int i, int j) const { return entries[(std::size_t)i * n + j]; }
};

using RealMatrix = KernelMatrix<double>;
using ComplexMatrix = KernelMatrix<cplx>;

// V(u,v) = 2 sin((u-v)x/2)/(u-v), analytically continued to V(u,u) = x.
// Evaluated through the sinc series near the diagonal.
double kernel_V(double u, double v, double x);

// Weighted symmetric kernels sqrt(w(u)) V(u,v) sqrt(w(v)).
double kernel_VF(double u, double v, double x, const std::function<double(double)>& fermi);
double kernel_VB(double u, double v, double x, const std::function<double(double)>& bose);

// The n x n matrix M(p_j, q_k) of the finite-coupling series,
//   M(p,q) = (i/(p-q)) [ ic/(p-q+ic) prod_l (p-q_l+ic)/(p-p_l+ic)
//                      + ic e^phi/(p-q-ic) prod_l (p-q_l-ic)/(p-p_l-ic) ],
// products over the full sets (the l = j factor of the denominators is +-ic).
// The (p-q_k +- ic) factors of the products cancel the k-th pole denominators,
// which is how the entries are evaluated.
ComplexMatrix matrix_M(const std::vector<double>& p_set, const std::vector<cplx>& q_set,
                       cplx phi, double c);

// Cauchy determinant det[1/(p_j - q_k)] in closed product form.
cplx cauchy_det(const std::vector<cplx>& p_set, const std::vector<cplx>& q_set);
double cauchy_det(const std::vector<double>& p_set, const std::vector<double>& q_set);

// Vandermonde product prod_{j<k} (p_k - p_j).
cplx vandermonde(const std::vector<cplx>& p_set);
double vandermonde(const std::vector<double>& p_set);

}  // namespace bosegas::kernels
