#include "bosegas/multilin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace bosegas::multilin {

namespace {

template <class Scalar>
Scalar det_impl(const kernels::KernelMatrix<Scalar>& m) {
    if (m.n == 0) return Scalar(1.0);
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const Mat> a(m.entries.data(), m.n, m.n);
    return Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(a)
        .determinant();
}

// Ryser: perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
// Subsets enumerated in Gray-code order so each step updates one column.
template <class Scalar>
Scalar ryser_impl(const kernels::KernelMatrix<Scalar>& m) {
    const int n = m.n;
    if (n == 0) return Scalar(1.0);
    if (n > 20) throw std::invalid_argument("permanent_ryser: order must be <= 20");
    std::vector<Scalar> row_sum(n, Scalar(0.0));
    Scalar acc(0.0);
    std::uint64_t gray = 0;
    const std::uint64_t count = (1ull << n) - 1;
    for (std::uint64_t k = 1; k <= count; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flipped = next ^ gray;
        const int j = std::countr_zero(flipped);
        const bool added = next & flipped;
        for (int i = 0; i < n; ++i) {
            if (added)
                row_sum[i] += m.at(i, j);
            else
                row_sum[i] -= m.at(i, j);
        }
        gray = next;
        Scalar prod(1.0);
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        const int popcount = std::popcount(next);
        if ((n - popcount) & 1)
            acc -= prod;
        else
            acc += prod;
    }
    return acc;
}

template <class Scalar>
Scalar brute_impl(const kernels::KernelMatrix<Scalar>& m) {
    const int n = m.n;
    if (n == 0) return Scalar(1.0);
    if (n > 9) throw std::invalid_argument("permanent_bruteforce: order must be <= 9");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Scalar acc(0.0);
    do {
        Scalar prod(1.0);
        for (int i = 0; i < n; ++i) prod *= m.at(i, idx[i]);
        acc += prod;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

}  // namespace

double det_dense(const kernels::RealMatrix& m) { return det_impl(m); }
cplx det_dense(const kernels::ComplexMatrix& m) { return det_impl(m); }
double permanent_ryser(const kernels::RealMatrix& m) { return ryser_impl(m); }
cplx permanent_ryser(const kernels::ComplexMatrix& m) { return ryser_impl(m); }
double permanent_bruteforce(const kernels::RealMatrix& m) { return brute_impl(m); }
cplx permanent_bruteforce(const kernels::ComplexMatrix& m) { return brute_impl(m); }

}  // namespace bosegas::multilin
