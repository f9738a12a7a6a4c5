#include "bosegas/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bosegas::kernels {

namespace {
constexpr cplx kI{0.0, 1.0};
}

void QueryPoint::validate() const {
    if (!(x >= 0.0)) throw std::invalid_argument("QueryPoint: x must be non-negative");
}

double kernel_V(double u, double v, double x) {
    const double d = u - v;
    const double y = 0.5 * d * x;
    if (std::abs(d) * x < 1e-6) {
        // x*sinc(y); the quartic term is already below double precision here
        const double y2 = y * y;
        return x * (1.0 - y2 / 6.0 + y2 * y2 / 120.0);
    }
    return 2.0 * std::sin(y) / d;
}

double kernel_VF(double u, double v, double x, const std::function<double(double)>& fermi) {
    return std::sqrt(fermi(u)) * kernel_V(u, v, x) * std::sqrt(fermi(v));
}

double kernel_VB(double u, double v, double x, const std::function<double(double)>& bose) {
    return std::sqrt(bose(u)) * kernel_V(u, v, x) * std::sqrt(bose(v));
}

ComplexMatrix matrix_M(const std::vector<double>& p_set, const std::vector<cplx>& q_set,
                       cplx phi, double c) {
    if (p_set.size() != q_set.size())
        throw std::invalid_argument("matrix_M: p_set and q_set must have equal size");
    if (!(c > 0.0)) throw std::invalid_argument("matrix_M: coupling c must be positive");
    const int n = (int)p_set.size();
    const cplx ic = kI * c;
    const cplx ephi = std::exp(phi);

    // pole collisions q_k = p_j and q_k = p_j +- ic
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cplx d = p_set[j] - q_set[k];
            const double s = std::abs(d) + c;
            if (std::abs(d) <= 1e-13 * s || std::abs(d + ic) <= 1e-13 * s ||
                std::abs(d - ic) <= 1e-13 * s) {
                std::ostringstream msg;
                msg << "matrix_M: pole collision between p[" << j << "]=" << p_set[j]
                    << " and q[" << k << "]=(" << q_set[k].real() << "," << q_set[k].imag()
                    << ")";
                throw std::domain_error(msg.str());
            }
        }

    ComplexMatrix m(n, Provenance::M);
    for (int j = 0; j < n; ++j) {
        const double pj = p_set[j];
        // row-wise denominators prod_l (p_j - p_l +- ic); the l = j factor is +-ic
        cplx den_plus = 1.0, den_minus = 1.0;
        for (int l = 0; l < n; ++l) {
            den_plus *= pj - p_set[l] + ic;
            den_minus *= pj - p_set[l] - ic;
        }
        for (int k = 0; k < n; ++k) {
            cplx num_plus = 1.0, num_minus = 1.0;
            for (int l = 0; l < n; ++l) {
                if (l == k) continue;
                num_plus *= pj - q_set[l] + ic;
                num_minus *= pj - q_set[l] - ic;
            }
            const cplx bracket = ic * num_plus / den_plus + ic * ephi * num_minus / den_minus;
            m.at(j, k) = kI / (pj - q_set[k]) * bracket;
        }
    }
    return m;
}

namespace {

template <class Scalar>
Scalar cauchy_det_impl(const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("cauchy_det: p_set and q_set must have equal size");
    const int n = (int)p.size();
    Scalar num = 1.0, den = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) num *= (p[a] - p[b]) * (q[b] - q[a]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Scalar d = p[a] - q[b];
            if (d == Scalar(0.0)) throw std::domain_error("cauchy_det: coincident p and q values");
            den *= d;
        }
    return num / den;
}

template <class Scalar>
Scalar vandermonde_impl(const std::vector<Scalar>& p) {
    const int n = (int)p.size();
    Scalar out = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) out *= p[k] - p[j];
    return out;
}

}  // namespace

cplx cauchy_det(const std::vector<cplx>& p_set, const std::vector<cplx>& q_set) {
    return cauchy_det_impl(p_set, q_set);
}
double cauchy_det(const std::vector<double>& p_set, const std::vector<double>& q_set) {
    return cauchy_det_impl(p_set, q_set);
}
cplx vandermonde(const std::vector<cplx>& p_set) { return vandermonde_impl(p_set); }
double vandermonde(const std::vector<double>& p_set) { return vandermonde_impl(p_set); }

}  // namespace bosegas::kernels
