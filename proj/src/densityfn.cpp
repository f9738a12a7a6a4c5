#include "bosegas/densityfn.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosegas/interp.hpp"

namespace bosegas::densityfn {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kThetaModeThreshold = 2.0;

double rational_map_inverse(double p, double s) {
    if (p == 0.0) return 0.0;
    return (-s + std::sqrt(s * s + 4.0 * p * p)) / (2.0 * p);
}
}  // namespace

cplx driving(double p, cplx q, double c) {
    const cplx d = p - q;
    return -c / (d * (d - kI * c));
}

struct DensitySolver::Impl {
    grids::LineGrid grid;
    const thermo::DressedEnergy* eps = nullptr;
    double c = 1.0;
    bool theta_mode = false;

    Eigen::MatrixXd a;  // kernel * fermi weight * quadrature, q-independent
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;

    std::vector<double> theta_t, theta_w;
    interp::Barycentric interp;  // in the grid's map variable
    std::vector<double> fermi;   // weight at grid nodes

    double to_map_var(double p) const {
        if (grid.map_kind == grids::MapKind::rational_map)
            return rational_map_inverse(p, grid.scale);
        return p;
    }

    bool outside(double p) const {
        return grid.map_kind != grids::MapKind::rational_map &&
               (p <= grid.nodes.front() || p >= grid.nodes.back());
    }

    // quadrature row r(p): (1/pi) \int dk c/((p-k)^2+c^2) w(k) G(k) ~ r(p).col
    void assemble_row(double p, double* out) const {
        const std::size_t m = grid.size();
        if (!theta_mode) {
            for (std::size_t l = 0; l < m; ++l) {
                const double d = p - grid.nodes[l];
                out[l] = (c / kPi) / (d * d + c * c) * fermi[l] * grid.weights[l];
            }
            return;
        }
        // substitution k = p + c*tan(theta); G(k) expanded in the barycentric
        // interpolation so the row acts on nodal values
        for (std::size_t l = 0; l < m; ++l) out[l] = 0.0;
        const auto& xs = interp.nodes();
        const auto& bw = interp.weights();
        std::vector<double> contrib(m);
        for (std::size_t k = 0; k < theta_t.size(); ++k) {
            const double th = 0.5 * kPi * theta_t[k];
            const double kq = p + c * std::tan(th);
            if (outside(kq)) continue;
            const double coef = 0.5 * theta_w[k] * thermo::fermi_weight(*eps, kq);
            const double u = to_map_var(kq);
            bool hit = false;
            for (std::size_t l = 0; l < m; ++l)
                if (u == xs[l]) {
                    out[l] += coef;
                    hit = true;
                    break;
                }
            if (hit) continue;
            double den = 0.0;
            for (std::size_t l = 0; l < m; ++l) {
                const double cl = bw[l] / (u - xs[l]);
                contrib[l] = cl;
                den += cl;
            }
            for (std::size_t l = 0; l < m; ++l) out[l] += coef * contrib[l] / den;
        }
    }
};

DensitySolver::DensitySolver(const thermo::DressedEnergy& eps, int theta_nodes)
    : impl_(std::make_unique<Impl>()) {
    const auto& params = eps.params();
    params.validate();
    if (params.coupling.kind != thermo::Coupling::Kind::finite)
        throw std::invalid_argument("DensitySolver: finite coupling required");
    if (!eps.converged())
        throw std::invalid_argument("DensitySolver: dressed energy has not converged");

    impl_->grid = eps.grid();
    impl_->eps = &eps;
    impl_->c = params.coupling.c;
    impl_->theta_mode = impl_->c < kThetaModeThreshold;

    const int m = (int)impl_->grid.size();
    impl_->fermi.resize(m);
    for (int i = 0; i < m; ++i) impl_->fermi[i] = thermo::fermi_weight(eps, impl_->grid.nodes[i]);

    const auto& xs = (impl_->grid.map_kind == grids::MapKind::rational_map)
                         ? impl_->grid.t_nodes
                         : impl_->grid.nodes;
    impl_->interp = interp::Barycentric(xs);
    grids::gauss_legendre_raw(theta_nodes, impl_->theta_t, impl_->theta_w);

    Eigen::MatrixXd a(m, m);
    std::vector<double> row(m);
    for (int i = 0; i < m; ++i) {
        impl_->assemble_row(impl_->grid.nodes[i], row.data());
        for (int l = 0; l < m; ++l) a(i, l) = row[l];
    }
    impl_->a = a;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(m, m) - a;
    impl_->lu = Eigen::PartialPivLU<Eigen::MatrixXd>(sys);
}

DensitySolver::~DensitySolver() = default;
DensitySolver::DensitySolver(DensitySolver&&) noexcept = default;
DensitySolver& DensitySolver::operator=(DensitySolver&&) noexcept = default;

std::vector<cplx> DensitySolver::solve_column(cplx q) const {
    const int m = (int)impl_->grid.size();
    Eigen::VectorXd re(m), im(m);
    for (int i = 0; i < m; ++i) {
        const cplx d = driving(impl_->grid.nodes[i], q, impl_->c);
        re(i) = d.real();
        im(i) = d.imag();
    }
    Eigen::VectorXd sre = impl_->lu.solve(re), sim = impl_->lu.solve(im);
    std::vector<cplx> out(m);
    for (int i = 0; i < m; ++i) out[i] = cplx(sre(i), sim(i));
    return out;
}

void DensitySolver::row_weights(double p, std::vector<double>& out) const {
    out.resize(impl_->grid.size());
    impl_->assemble_row(p, out.data());
}

cplx DensitySolver::eval(double p, cplx q, const std::vector<cplx>& column) const {
    const std::size_t m = impl_->grid.size();
    static thread_local std::vector<double> row;
    row.resize(m);
    impl_->assemble_row(p, row.data());
    cplx s = driving(p, q, impl_->c);
    for (std::size_t l = 0; l < m; ++l) s += row[l] * column[l];
    return s;
}

double DensitySolver::residual(cplx q, const std::vector<cplx>& column) const {
    const int m = (int)impl_->grid.size();
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        cplx lhs = column[i];
        for (int l = 0; l < m; ++l) lhs -= impl_->a(i, l) * column[l];
        worst = std::max(worst, std::abs(lhs - driving(impl_->grid.nodes[i], q, impl_->c)));
    }
    return worst;
}

const grids::LineGrid& DensitySolver::grid() const { return impl_->grid; }
double DensitySolver::coupling() const { return impl_->c; }

DensityFnTable solve_density_fn(const thermo::GasParams& params,
                                const thermo::DressedEnergy& eps, cplx q,
                                const grids::LineGrid& grid) {
    if (!(q.imag() > 0.0))
        throw std::domain_error("solve_density_fn: q must lie above the real axis");
    params.validate();
    // the discretization grid is the one the dressed energy lives on; a
    // different requested grid means re-solving eps there first
    if (grid.size() != eps.grid().size() || grid.nodes != eps.grid().nodes)
        throw std::invalid_argument(
            "solve_density_fn: grid must match the dressed-energy grid");
    DensitySolver solver(eps);
    DensityFnTable table;
    table.p_grid = solver.grid();
    table.q_point = q;
    table.params = params;
    table.values = solver.solve_column(q);
    table.solve_residual = solver.residual(q, table.values);
    if (!(table.solve_residual < 1e-8))
        throw std::runtime_error("solve_density_fn: dense solve failed, residual " +
                                 std::to_string(table.solve_residual));
    return table;
}

cplx density_fn_limit_impenetrable(double p, cplx q) {
    const cplx d = p - q;
    if (d == cplx(0.0)) throw std::domain_error("density_fn_limit: pole at p = q");
    return -kI / d;
}

cplx density_fn_limit_free_ratio(double T, double mu, double p, cplx q) {
    const cplx d = p - q;
    if (d == cplx(0.0)) throw std::domain_error("density_fn_limit: pole at p = q");
    const double denom = -std::expm1(-(p * p - mu) / T);
    return 1.0 / (d * d * denom);
}

}  // namespace bosegas::densityfn
