#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "bosegas/grids.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::densityfn {

using cplx = std::complex<double>;

// driving term -c/((p-q)(p-q-ic))
cplx driving(double p, cplx q, double c);

// Tabulated solution of the linear integral equation
//   G(p,q) = -c/((p-q)(p-q-ic))
//            + (1/pi) \int dk c/((p-k)^2+c^2) G(k,q)/(1+e^{eps(k)/T})
// for one q in the upper half plane, discretized on the p grid.
struct DensityFnTable {
    grids::LineGrid p_grid;
    cplx q_point;
    std::vector<cplx> values;
    thermo::GasParams params;
    double solve_residual = 0.0;  // inf-norm defect of the discrete system
};

// Nystrom solver with the kernel matrix factored once; the matrix does not
// depend on q, so many q points share one factorization. Rows switch to the
// q = p + c*tan(theta) substitution at small c, where the plain rule cannot
// resolve the Lorentzian. Solutions lose O(c) relative accuracy when
// Im q <~ c; keep q well above the real axis for small coupling.
class DensitySolver {
  public:
    explicit DensitySolver(const thermo::DressedEnergy& eps, int theta_nodes = 48);
    ~DensitySolver();
    DensitySolver(DensitySolver&&) noexcept;
    DensitySolver& operator=(DensitySolver&&) noexcept;

    // G(p_i, q) at every grid node. q may sit anywhere the analytic
    // continuation of the driving term is regular; physical queries keep
    // Im q > 0.
    std::vector<cplx> solve_column(cplx q) const;

    // quadrature row r(p) with G(p,q) = driving(p,q,c) + r(p) . column
    void row_weights(double p, std::vector<double>& out) const;

    // G(p, q) at arbitrary real p from a solved column, through the equation
    cplx eval(double p, cplx q, const std::vector<cplx>& column) const;

    // inf-norm of (I - A) g - driving for a solved column
    double residual(cplx q, const std::vector<cplx>& column) const;

    const grids::LineGrid& grid() const;
    double coupling() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

DensityFnTable solve_density_fn(const thermo::GasParams& params,
                                const thermo::DressedEnergy& eps, cplx q,
                                const grids::LineGrid& grid);

// Explicit limits: -i/(p-q) for impenetrable bosons; for free bosons the
// vanishing-coupling form -c/((p-q)^2 (1-e^{-(p^2-mu)/T})) divided by -c,
// i.e. the finite ratio G/(-c).
cplx density_fn_limit_impenetrable(double p, cplx q);
cplx density_fn_limit_free_ratio(double T, double mu, double p, cplx q);

}  // namespace bosegas::densityfn
