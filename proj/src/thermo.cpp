#include "bosegas/thermo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bosegas::thermo {

namespace {

constexpr double kPi = std::numbers::pi;

// plain Nystrom rows resolve the Lorentzian kernel once its width exceeds a
// few node spacings; below that the kernel is integrated in the substitution
// variable q = p + c*tan(theta) instead
constexpr double kThetaModeThreshold = 2.0;

// inverse of p = s*t/(1-t^2) on (-1,1)
double rational_map_inverse(double p, double s) {
    if (p == 0.0) return 0.0;
    return (-s + std::sqrt(s * s + 4.0 * p * p)) / (2.0 * p);
}

}  // namespace

void GasParams::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("GasParams: temperature must be positive");
    if (coupling.kind == Coupling::Kind::finite && !(coupling.c > 0.0))
        throw std::invalid_argument("GasParams: coupling c must be positive");
}

double softplus(double z) {
    if (z > 36.0) return z + std::exp(-z);
    if (z < -36.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

DressedEnergy::DressedEnergy(GasParams params, grids::LineGrid grid, std::vector<double> values,
                             double residual, bool converged)
    : params_(std::move(params)),
      grid_(std::move(grid)),
      values_(std::move(values)),
      residual_(residual),
      converged_(converged) {
    correction_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double p = grid_.nodes[i];
        correction_[i] = values_[i] - (p * p - params_.mu);
    }
    if (grid_.map_kind == grids::MapKind::rational_map)
        interp_ = interp::Barycentric(grid_.t_nodes);
    else
        interp_ = interp::Barycentric(grid_.nodes);
}

double DressedEnergy::eval(double p) const {
    const double bare = p * p - params_.mu;
    double u;
    if (grid_.map_kind == grids::MapKind::rational_map) {
        u = rational_map_inverse(p, grid_.scale);
    } else {
        if (p <= grid_.nodes.front() || p >= grid_.nodes.back()) return bare;
        u = p;
    }
    return bare + interp_.eval(correction_, u);
}

namespace {

// one application of (1/pi) \int dq c/((p-q)^2+c^2) L(q) at every grid node,
// where L is ln(1+e^{-eps/T}) represented by its nodal values
class KernelApply {
  public:
    KernelApply(const grids::LineGrid& grid, double c, int theta_nodes)
        : grid_(grid), c_(c), theta_mode_(c < kThetaModeThreshold) {
        const std::size_t m = grid.size();
        if (!theta_mode_) {
            plain_.resize(m * m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t l = 0; l < m; ++l) {
                    const double d = grid.nodes[i] - grid.nodes[l];
                    plain_[i * m + l] = (c / kPi) / (d * d + c * c) * grid.weights[l];
                }
        } else {
            grids::gauss_legendre_raw(theta_nodes, theta_t_, theta_w_);
            if (grid.map_kind == grids::MapKind::rational_map)
                interp_ = interp::Barycentric(grid.t_nodes);
            else
                interp_ = interp::Barycentric(grid.nodes);
        }
    }

    void apply(const std::vector<double>& L, std::vector<double>& out) const {
        const std::size_t m = grid_.size();
        out.assign(m, 0.0);
        if (!theta_mode_) {
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                for (std::size_t l = 0; l < m; ++l) s += plain_[i * m + l] * L[l];
                out[i] = s;
            }
            return;
        }
        // q = p + c*tan(theta): (1/pi) \int_{-pi/2}^{pi/2} L(p + c tan th) dth
        for (std::size_t i = 0; i < m; ++i) {
            const double p = grid_.nodes[i];
            double s = 0.0;
            for (std::size_t k = 0; k < theta_t_.size(); ++k) {
                const double th = 0.5 * kPi * theta_t_[k];
                const double q = p + c_ * std::tan(th);
                s += 0.5 * theta_w_[k] * eval_L(L, q);
            }
            out[i] = s;  // 0.5*pi Jacobian and 1/pi cancel up to the 0.5 above
        }
    }

  private:
    double eval_L(const std::vector<double>& L, double q) const {
        if (grid_.map_kind == grids::MapKind::rational_map)
            return interp_.eval(L, rational_map_inverse(q, grid_.scale));
        if (q <= grid_.nodes.front() || q >= grid_.nodes.back()) return 0.0;
        return interp_.eval(L, q);
    }

    const grids::LineGrid& grid_;
    double c_;
    bool theta_mode_;
    std::vector<double> plain_;
    std::vector<double> theta_t_, theta_w_;
    interp::Barycentric interp_;
};

}  // namespace

DressedEnergy solve_dressed_energy(const GasParams& params, const grids::LineGrid& grid,
                                   double tol, int max_iter, const SolveOptions& opts) {
    params.validate();
    if (params.coupling.kind != Coupling::Kind::finite)
        throw std::invalid_argument("solve_dressed_energy: finite coupling required");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_dressed_energy: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("solve_dressed_energy: max_iter must be >= 1");

    const double c = params.coupling.c, T = params.T, mu = params.mu;
    const std::size_t m = grid.size();
    const double alpha = opts.damping;

    KernelApply kernel(grid, c, opts.theta_nodes);

    std::vector<double> eps(m), bare(m), L(m), I(m);
    for (std::size_t i = 0; i < m; ++i) {
        bare[i] = grid.nodes[i] * grid.nodes[i] - mu;
        eps[i] = bare[i];
    }

    double residual = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < m; ++i) L[i] = softplus(-eps[i] / T);
        kernel.apply(L, I);
        residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double next = (1.0 - alpha) * eps[i] + alpha * (bare[i] - T * I[i]);
            residual = std::max(residual, std::abs(next - eps[i]));
            eps[i] = next;
        }
        if (residual <= tol) {
            converged = true;
            break;
        }
    }
    return DressedEnergy(params, grid, std::move(eps), residual, converged);
}

double fermi_weight(const DressedEnergy& eps, double p) {
    const double z = eps.eval(p) / eps.params().T;
    if (z > 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

double fermi_weight_bare(double T, double mu, double p) {
    const double z = (p * p - mu) / T;
    if (z > 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

double bose_weight(double T, double mu, double p) {
    if (!(mu < 0.0))
        throw std::domain_error(
            "bose_weight: the chemical potential must be restricted to the physical range mu < 0");
    const double z = (p * p - mu) / T;
    if (z > 700.0) return 0.0;
    return 1.0 / std::expm1(z);
}

double bose_weight(const GasParams& params, double p) {
    return bose_weight(params.T, params.mu, p);
}

grids::LineGrid thermal_grid(const GasParams& params, int m) {
    return grids::line_grid(m, grids::default_scale(params.T, params.mu),
                            grids::MapKind::rational_map);
}

}  // namespace bosegas::thermo
