#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace bosegas::interp {

// Barycentric Lagrange interpolation on a fixed node set (second form).
// Weights are computed with capacity scaling so products stay in range.
class Barycentric {
  public:
    Barycentric() = default;

    explicit Barycentric(std::vector<double> nodes) : x_(std::move(nodes)) {
        const std::size_t n = x_.size();
        if (n < 2) throw std::invalid_argument("Barycentric: need at least 2 nodes");
        w_.assign(n, 1.0);
        const double cap = 4.0 / (x_.back() - x_.front());
        for (std::size_t j = 0; j < n; ++j) {
            double wj = 1.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) wj *= (x_[j] - x_[k]) * cap;
            w_[j] = 1.0 / wj;
        }
    }

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

    template <class T>
    T eval(const std::vector<T>& values, double x) const {
        const std::size_t n = x_.size();
        T num{};
        double den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = x - x_[j];
            if (d == 0.0) return values[j];
            const double c = w_[j] / d;
            num += values[j] * c;
            den += c;
        }
        return num * (1.0 / den);
    }

  private:
    std::vector<double> x_;
    std::vector<double> w_;
};

// Local polynomial interpolation on a sorted, possibly strongly graded grid:
// barycentric on a window of `stencil` nodes nearest to x. Suitable where a
// global polynomial through graded nodes would be ill-conditioned.
template <class T>
T local_interp(const std::vector<double>& xs, const std::vector<T>& vals, double x,
               int stencil = 8) {
    const int n = (int)xs.size();
    if (n == 0) throw std::invalid_argument("local_interp: empty grid");
    if (n <= stencil) stencil = n;
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    int i = (int)(it - xs.begin());
    int lo = std::clamp(i - stencil / 2, 0, n - stencil);
    // barycentric on the stencil
    double w[32];
    const double cap = 4.0 / (xs[lo + stencil - 1] - xs[lo]);
    for (int j = 0; j < stencil; ++j) {
        double wj = 1.0;
        for (int k = 0; k < stencil; ++k)
            if (k != j) wj *= (xs[lo + j] - xs[lo + k]) * cap;
        w[j] = 1.0 / wj;
    }
    T num{};
    double den = 0.0;
    for (int j = 0; j < stencil; ++j) {
        const double d = x - xs[lo + j];
        if (d == 0.0) return vals[lo + j];
        const double c = w[j] / d;
        num += vals[lo + j] * c;
        den += c;
    }
    return num * (1.0 / den);
}

}  // namespace bosegas::interp
