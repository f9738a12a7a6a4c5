#include "bosegas/fredholm.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosegas/multilin.hpp"

namespace bosegas::fredholm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd weighted_matrix(const Kernel& kernel, const grids::LineGrid& grid) {
    const int m = (int)grid.size();
    Eigen::VectorXd sqw(m);
    for (int i = 0; i < m; ++i) sqw(i) = std::sqrt(grid.weights[i]);
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = sqw(i) * kernel(grid.nodes[i], grid.nodes[j]) * sqw(j);
            s(i, j) = v;
            s(j, i) = v;
        }
    return s;
}

}  // namespace

std::vector<double> operator_eigenvalues(const Kernel& kernel, const grids::LineGrid& grid) {
    Eigen::MatrixXd s = weighted_matrix(kernel, grid);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double fredholm_det_nystrom(const Kernel& kernel, double lambda, const grids::LineGrid& grid) {
    const int m = (int)grid.size();
    Eigen::MatrixXd a = lambda * weighted_matrix(kernel, grid);
    a += Eigen::MatrixXd::Identity(m, m);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
}

cplx fredholm_det_nystrom(const Kernel& kernel, cplx lambda, const grids::LineGrid& grid) {
    const int m = (int)grid.size();
    Eigen::MatrixXcd a = lambda * weighted_matrix(kernel, grid);
    a += Eigen::MatrixXcd::Identity(m, m);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
}

SeriesResult fredholm_series(const Kernel& kernel, double lambda, int n_max,
                             const grids::LineGrid& grid, SeriesMode mode) {
    if (n_max < 0) throw std::invalid_argument("fredholm_series: n_max must be >= 0");
    if (n_max > 8) throw std::invalid_argument("fredholm_series: n_max must be <= 8");

    SeriesResult out;
    out.n_max = n_max;
    if (n_max == 0) return out;

    const std::vector<double> eta = operator_eigenvalues(kernel, grid);
    const std::size_t m = eta.size();

    std::vector<double> coef(n_max + 1, 0.0);
    coef[0] = 1.0;
    if (mode == SeriesMode::determinant) {
        // e_n built by absorbing one eigenvalue at a time
        for (std::size_t i = 0; i < m; ++i) {
            const double z = lambda * eta[i];
            for (int n = n_max; n >= 1; --n) coef[n] += z * coef[n - 1];
        }
    } else {
        // h_n: geometric convolution over eigenvalues
        for (std::size_t i = 0; i < m; ++i) {
            const double z = lambda * eta[i];
            for (int n = 1; n <= n_max; ++n) coef[n] += z * coef[n - 1];
        }
    }

    out.terms = coef;
    out.total = 0.0;
    for (double t : out.terms) out.total += t;
    out.tail_estimate = std::abs(out.terms.back());
    return out;
}

SeriesResult fredholm_series_tensor(const Kernel& kernel, double lambda, int n_max,
                                    const grids::LineGrid& grid, SeriesMode mode) {
    if (n_max < 0) throw std::invalid_argument("fredholm_series_tensor: n_max must be >= 0");
    if (n_max > 3) throw std::invalid_argument("fredholm_series_tensor: n_max must be <= 3");

    SeriesResult out;
    out.n_max = n_max;
    if (n_max == 0) return out;

    const int m = (int)grid.size();
    auto term = [&](int n) {
        double acc = 0.0;
        kernels::RealMatrix a(n);
        std::vector<int> idx(n, 0);
        while (true) {
            double w = 1.0;
            for (int d = 0; d < n; ++d) w *= grid.weights[idx[d]] / kTwoPi;
            for (int r = 0; r < n; ++r)
                for (int cidx = 0; cidx < n; ++cidx)
                    a.at(r, cidx) = kernel(grid.nodes[idx[r]], grid.nodes[idx[cidx]]);
            const double v = (mode == SeriesMode::determinant) ? multilin::det_dense(a)
                                                               : multilin::permanent_bruteforce(a);
            acc += w * v;
            int d = n - 1;
            while (d >= 0 && ++idx[d] == m) idx[d--] = 0;
            if (d < 0) break;
        }
        double fact = 1.0;
        for (int k = 2; k <= n; ++k) fact *= k;
        return std::pow(lambda * kTwoPi, n) / fact * acc;
    };

    out.terms.resize(n_max + 1);
    out.terms[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) out.terms[n] = term(n);
    out.total = 0.0;
    for (double t : out.terms) out.total += t;
    out.tail_estimate = std::abs(out.terms.back());
    return out;
}

double permanent_resolvent_oracle(const Kernel& kernel, double lambda,
                                  const grids::LineGrid& grid) {
    const std::vector<double> eta = operator_eigenvalues(kernel, grid);
    double radius = 0.0;
    for (double e : eta) radius = std::max(radius, std::abs(lambda * e));
    if (radius >= 0.99)
        throw std::domain_error(
            "permanent_resolvent_oracle: permanent series diverges, spectral radius " +
            std::to_string(radius));
    const int m = (int)grid.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - lambda * weighted_matrix(kernel, grid);
    const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
    return 1.0 / det;
}

}  // namespace bosegas::fredholm
