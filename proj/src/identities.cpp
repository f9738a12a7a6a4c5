#include "bosegas/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "bosegas/fredholm.hpp"
#include "bosegas/genfun.hpp"
#include "bosegas/kernels.hpp"
#include "bosegas/multilin.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::identities {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// collision-free draw in [-2, 2] with minimum pairwise gap 0.1
std::vector<double> draw_set(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> v(n);
        for (double& x : v) x = uni(rng);
        std::vector<double> s = v;
        std::sort(s.begin(), s.end());
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i)
            if (s[i + 1] - s[i] < 0.1) ok = false;
        if (ok) return v;
    }
    throw std::runtime_error("draw_set: could not draw a collision-free set");
}

// joint draw: p and q mutually separated as well
void draw_two_sets(int n, std::mt19937_64& rng, std::vector<double>& p,
                   std::vector<double>& q) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> all = draw_set(2 * n, rng);
        std::vector<double> s = all;
        std::sort(s.begin(), s.end());
        bool ok = true;
        for (int i = 0; i + 1 < 2 * n; ++i)
            if (s[i + 1] - s[i] < 0.1) ok = false;
        if (!ok) continue;
        p.assign(all.begin(), all.begin() + n);
        q.assign(all.begin() + n, all.end());
        return;
    }
    throw std::runtime_error("draw_two_sets: could not draw collision-free sets");
}

template <class F>
void for_each_permutation(int n, F&& fn) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    do {
        // permutation sign by inversion count
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (idx[i] > idx[j]) ++inv;
        fn(idx, (inv & 1) ? -1.0 : 1.0);
    } while (std::next_permutation(idx.begin(), idx.end()));
}

double rel_residual(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

}  // namespace

double check_nicelemma(int n, double c, std::uint64_t seed) {
    if (n < 1 || n > 4) throw std::invalid_argument("check_nicelemma: n must be in 1..4");
    if (!(c > 0.0)) throw std::invalid_argument("check_nicelemma: c must be positive");
    std::mt19937_64 rng(seed);
    std::vector<double> p, q;
    draw_two_sets(n, rng, p, q);
    const cplx ic(0.0, c);

    // LHS
    cplx vq = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) vq *= q[b] - q[a];
    cplx pp = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) pp *= p[a] - p[b] + ic;

    cplx perm_sum = 0.0;
    for_each_permutation(n, [&](const std::vector<int>& s, double sign) {
        cplx num = 1.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < a; ++b) num *= p[s[a]] - q[b] + ic;
            for (int b = a + 1; b < n; ++b) num *= p[s[a]] - q[b];
        }
        cplx den = 1.0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) den *= p[s[b]] - p[s[a]] + ic;
        perm_sum += sign * num / den;
    });
    const cplx lhs = vq * pp * perm_sum;

    // RHS
    cplx front = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) front *= (p[a] - q[b]) * (p[a] - q[b] + ic);
    kernels::ComplexMatrix mat(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            mat.at(j, k) = 1.0 / ((p[j] - q[k]) * (p[j] - q[k] + ic));
    const cplx rhs = front * multilin::det_dense(mat);

    return rel_residual(lhs, rhs);
}

double check_quotient_identity(int n, std::uint64_t seed) {
    if (n < 1 || n > 5)
        throw std::invalid_argument("check_quotient_identity: n must be in 1..5");
    std::mt19937_64 rng(seed);
    std::vector<double> p, q;
    draw_two_sets(n, rng, p, q);

    kernels::RealMatrix m1(n), m2(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double d = p[j] - q[k];
            m1.at(j, k) = 1.0 / (d * d);
            m2.at(j, k) = 1.0 / d;
        }
    const double quotient = multilin::det_dense(m1) / multilin::det_dense(m2);

    double perm_sum = 0.0;
    for_each_permutation(n, [&](const std::vector<int>& s, double) {
        double prod = 1.0;
        for (int a = 0; a < n; ++a) prod *= 1.0 / (p[s[a]] - q[a]);
        perm_sum += prod;
    });

    return rel_residual(quotient, perm_sum);
}

double check_qint(double u, double v, double x, const grids::ContourSpec& contour) {
    if (!(x > 0.0) && x != 0.0) throw std::invalid_argument("check_qint: x must be >= 0");
    auto integrand = [&](cplx q) {
        return std::exp(-kI * q * x) / ((u - q) * (v - q)) / kTwoPi;
    };
    auto evaluate = [&](double window) -> cplx {
        const double w = std::max({window, std::abs(u) + 1.0, std::abs(v) + 1.0});
        grids::ComplexPath path =
            grids::winged_path(contour.shift, w, x, contour.node_count, 64);
        return path.integrate(integrand);
    };
    const cplx numeric =
        grids::adaptive_window_integral(evaluate, contour.window, 1e-12, 10);
    const cplx closed =
        -kernels::kernel_V(u, v, x) * std::exp(-kI * cplx(0.5 * (u + v) * x));
    return std::abs(numeric - closed) / std::max(1.0, std::abs(closed));
}

double check_symmetrization(int n, double T, double mu, double x, std::uint64_t seed,
                            double phi) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("check_symmetrization: n must be in 1..3");
    if (!(mu < 0.0))
        throw std::domain_error("check_symmetrization: free regime requires mu < 0");
    (void)seed;

    const double lambda = std::expm1(phi) / kTwoPi;
    auto grid = genfun::limit_grid(T, mu, 64);
    auto kernel = [T, mu, x](double a, double b) {
        return std::sqrt(thermo::bose_weight(T, mu, a)) * kernels::kernel_V(a, b, x) *
               std::sqrt(thermo::bose_weight(T, mu, b));
    };
    const double factorized =
        fredholm::fredholm_series(kernel, lambda, n, grid, fredholm::SeriesMode::permanent)
            .terms[n];

    if (n == 1) {
        // the two pipelines coincide before any symmetrization at n = 1; the
        // q integral is the same residue evaluation in both
        double direct = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double p = grid.nodes[i];
            direct += grid.weights[i] / kTwoPi * thermo::bose_weight(T, mu, p) *
                      kernels::kernel_V(p, p, x);
        }
        direct *= std::expm1(phi);
        return rel_residual(direct, factorized);
    }

    // direct route: squared permutation sum under tensor quadrature over the
    // contour, before the symmetry replacement
    const int mp = (int)grid.size();
    grids::ComplexPath path =
        grids::winged_path(0.6, grid.nodes.back() + 1.5, x, 96, 48);
    const int mq = (int)path.size();

    std::vector<cplx> pfac(mp), qfac(mq);
    for (int i = 0; i < mp; ++i)
        pfac[i] = grid.weights[i] * thermo::bose_weight(T, mu, grid.nodes[i]) *
                  std::exp(kI * (grid.nodes[i] * x)) / kTwoPi;
    for (int k = 0; k < mq; ++k)
        qfac[k] = path.weights[k] * std::exp(-kI * path.nodes[k] * x) / kTwoPi;

    // sum over ordered q tuples and sorted p tuples (the integrand is
    // symmetric in the p's)
    cplx direct = 0.0;
    std::vector<int> qi(n);
    std::vector<double> pt(n);
    std::vector<cplx> qt(n);

    auto q_sum = [&](const std::vector<double>& pv) {
        cplx acc = 0.0;
        std::vector<int> idx(n, 0);
        while (true) {
            for (int a = 0; a < n; ++a) qt[a] = path.nodes[idx[a]];
            cplx sperm = 0.0;
            for_each_permutation(n, [&](const std::vector<int>& s, double) {
                cplx prod = 1.0;
                for (int a = 0; a < n; ++a) prod *= 1.0 / (pv[s[a]] - qt[a]);
                sperm += prod;
            });
            cplx w = sperm * sperm;
            for (int a = 0; a < n; ++a) w *= qfac[idx[a]];
            acc += w;
            int d = n - 1;
            while (d >= 0 && ++idx[d] == mq) idx[d--] = 0;
            if (d < 0) break;
        }
        return acc;
    };

    const double phi_factor = std::pow(1.0 - std::exp(phi), n);
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;

    if (n == 2) {
        for (int i = 0; i < mp; ++i)
            for (int j = i; j < mp; ++j) {
                pt[0] = grid.nodes[i];
                pt[1] = grid.nodes[j];
                const double mult = (i == j) ? 1.0 : 2.0;
                direct += mult * pfac[i] * pfac[j] * q_sum(pt);
            }
    } else {
        for (int i = 0; i < mp; ++i)
            for (int j = i; j < mp; ++j)
                for (int k = j; k < mp; ++k) {
                    pt[0] = grid.nodes[i];
                    pt[1] = grid.nodes[j];
                    pt[2] = grid.nodes[k];
                    double mult = 6.0;
                    if (i == j && j == k)
                        mult = 1.0;
                    else if (i == j || j == k)
                        mult = 3.0;
                    direct += mult * pfac[i] * pfac[j] * pfac[k] * q_sum(pt);
                }
    }
    direct *= phi_factor / (fact * fact);

    return rel_residual(direct, cplx(factorized, 0.0));
}

}  // namespace bosegas::identities
