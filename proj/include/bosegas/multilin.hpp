#pragma once

#include "bosegas/kernels.hpp"

namespace bosegas::multilin {

using cplx = std::complex<double>;

// Determinant via LU with partial pivoting; the 0x0 determinant is 1.
double det_dense(const kernels::RealMatrix& m);
cplx det_dense(const kernels::ComplexMatrix& m);

// Permanent via Ryser's inclusion-exclusion with Gray-code subset updates,
// cost O(2^n n). Requires n <= 20.
double permanent_ryser(const kernels::RealMatrix& m);
cplx permanent_ryser(const kernels::ComplexMatrix& m);

// Permanent as the direct sum over all n! permutations. Requires n <= 9.
double permanent_bruteforce(const kernels::RealMatrix& m);
cplx permanent_bruteforce(const kernels::ComplexMatrix& m);

}  // namespace bosegas::multilin
