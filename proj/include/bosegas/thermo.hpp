#pragma once

#include <vector>

#include "bosegas/grids.hpp"
#include "bosegas/interp.hpp"

namespace bosegas::thermo {

// Coupling regime of the delta-interacting Bose gas.
struct Coupling {
    enum class Kind { finite, impenetrable, free_bosons };
    Kind kind = Kind::finite;
    double c = 1.0;  // repulsion strength, meaningful for Kind::finite

    static Coupling finite(double c) { return {Kind::finite, c}; }
    static Coupling impenetrable() { return {Kind::impenetrable, 0.0}; }
    static Coupling free_bosons() { return {Kind::free_bosons, 0.0}; }
};

struct GasParams {
    Coupling coupling;
    double T;   // temperature, > 0
    double mu;  // chemical potential

    void validate() const;
};

// Tabulated solution eps(p) of the Yang-Yang equation
//   eps(p) = p^2 - mu - (T/pi) \int dq c/((p-q)^2+c^2) ln(1+e^{-eps(q)/T})
// with barycentric interpolation of the correction eps - (p^2 - mu) over the
// grid's map variable. Immutable after the solve.
class DressedEnergy {
  public:
    DressedEnergy() = default;
    DressedEnergy(GasParams params, grids::LineGrid grid, std::vector<double> values,
                  double residual, bool converged);

    const grids::LineGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const GasParams& params() const { return params_; }
    double residual() const { return residual_; }
    bool converged() const { return converged_; }

    // interpolated eps(p); reverts to the bare dispersion p^2 - mu where the
    // correction is below resolution (always finite, defined for all real p)
    double eval(double p) const;

  private:
    GasParams params_;
    grids::LineGrid grid_;
    std::vector<double> values_;
    std::vector<double> correction_;  // eps - (p^2 - mu) at nodes
    interp::Barycentric interp_;
    double residual_ = 0.0;
    bool converged_ = false;
};

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 400;
    double damping = 0.5;  // eps <- (1-a) eps + a * rhs
    int theta_nodes = 48;  // substitution quadrature rule size for small c
};

// Damped fixed-point solve of the Yang-Yang equation at finite coupling.
// Non-convergence is reported through the returned object, not thrown.
DressedEnergy solve_dressed_energy(const GasParams& params, const grids::LineGrid& grid,
                                   double tol = 1e-12, int max_iter = 400,
                                   const SolveOptions& opts = {});

// 1/(1 + e^{eps(p)/T}) from a solved table.
double fermi_weight(const DressedEnergy& eps, double p);

// Impenetrable limit: eps = p^2 - mu exactly.
double fermi_weight_bare(double T, double mu, double p);

// Bose occupation b(p) = 1/(e^{(p^2-mu)/T} - 1); requires mu < 0.
double bose_weight(const GasParams& params, double p);
double bose_weight(double T, double mu, double p);

// overflow-safe ln(1 + e^z)
double softplus(double z);

// Default thermal grid for the given parameters.
grids::LineGrid thermal_grid(const GasParams& params, int m = 128);

}  // namespace bosegas::thermo
