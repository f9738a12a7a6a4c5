#include "bosegas/genfun.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosegas/kernels.hpp"

namespace bosegas::genfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double lambda_of_phi(double phi) { return std::expm1(phi) / kTwoPi; }

}  // namespace

grids::LineGrid limit_grid(double T, double mu, int m) {
    // truncated window [-L, L] with L^2 = max(mu,0) + T ln(1e16), where the
    // statistical weight has decayed below 1e-16
    const double scale = std::sqrt(std::max(mu, 0.0) / std::log(1e16) + T);
    return grids::line_grid(m, scale, grids::MapKind::truncated_window);
}

SeriesResult genfun_impenetrable_series(double T, double mu, double x, double phi, int n_max,
                                        int m) {
    if (!(T > 0.0)) throw std::invalid_argument("genfun_impenetrable: T must be positive");
    if (!(x >= 0.0)) throw std::invalid_argument("genfun_impenetrable: x must be non-negative");
    auto grid = limit_grid(T, mu, m);
    auto kernel = [T, mu, x](double u, double v) {
        return std::sqrt(thermo::fermi_weight_bare(T, mu, u)) * kernels::kernel_V(u, v, x) *
               std::sqrt(thermo::fermi_weight_bare(T, mu, v));
    };
    return fredholm::fredholm_series(kernel, lambda_of_phi(phi), n_max, grid,
                                     fredholm::SeriesMode::determinant);
}

double genfun_impenetrable(double T, double mu, double x, double phi,
                           ImpenetrableMethod method, int n_max, int m) {
    if (method == ImpenetrableMethod::series)
        return genfun_impenetrable_series(T, mu, x, phi, n_max, m).total;
    if (!(T > 0.0)) throw std::invalid_argument("genfun_impenetrable: T must be positive");
    if (!(x >= 0.0)) throw std::invalid_argument("genfun_impenetrable: x must be non-negative");
    auto grid = limit_grid(T, mu, m);
    auto kernel = [T, mu, x](double u, double v) {
        return std::sqrt(thermo::fermi_weight_bare(T, mu, u)) * kernels::kernel_V(u, v, x) *
               std::sqrt(thermo::fermi_weight_bare(T, mu, v));
    };
    return fredholm::fredholm_det_nystrom(kernel, lambda_of_phi(phi), grid);
}

SeriesResult genfun_free_series(double T, double mu, double x, double phi, int n_max, int m) {
    if (!(T > 0.0)) throw std::invalid_argument("genfun_free: T must be positive");
    if (!(mu < 0.0))
        throw std::domain_error(
            "genfun_free: the chemical potential must be restricted to the physical range "
            "mu < 0");
    if (!(x >= 0.0)) throw std::invalid_argument("genfun_free: x must be non-negative");
    auto grid = limit_grid(T, mu, m);
    auto kernel = [T, mu, x](double u, double v) {
        return std::sqrt(thermo::bose_weight(T, mu, u)) * kernels::kernel_V(u, v, x) *
               std::sqrt(thermo::bose_weight(T, mu, v));
    };
    return fredholm::fredholm_series(kernel, lambda_of_phi(phi), n_max, grid,
                                     fredholm::SeriesMode::permanent);
}

double genfun_free(double T, double mu, double x, double phi, FreeMethod method, int n_max,
                   int m) {
    if (method == FreeMethod::perm_series)
        return genfun_free_series(T, mu, x, phi, n_max, m).total;
    if (!(T > 0.0)) throw std::invalid_argument("genfun_free: T must be positive");
    if (!(mu < 0.0))
        throw std::domain_error(
            "genfun_free: the chemical potential must be restricted to the physical range "
            "mu < 0");
    if (!(x >= 0.0)) throw std::invalid_argument("genfun_free: x must be non-negative");
    auto grid = limit_grid(T, mu, m);
    auto kernel = [T, mu, x](double u, double v) {
        return std::sqrt(thermo::bose_weight(T, mu, u)) * kernels::kernel_V(u, v, x) *
               std::sqrt(thermo::bose_weight(T, mu, v));
    };
    return fredholm::permanent_resolvent_oracle(kernel, lambda_of_phi(phi), grid);
}

double default_contour_shift(double c, double x) { return std::min(0.5 * c, 1.0 / (1.0 + x)); }

// ---------------------------------------------------------------------------
// generic coupling
// ---------------------------------------------------------------------------

namespace {

// entry M(p_j, q_k) with the (p_j - q_k +- ic) pole factors already cancelled
// against the l = k factor of the set products
cplx m_entry(const double* p, const cplx* q, int n, int j, int k, cplx ephi, double c) {
    const cplx ic(0.0, c);
    const double pj = p[j];
    cplx den_p = 1.0, den_m = 1.0, num_p = 1.0, num_m = 1.0;
    for (int l = 0; l < n; ++l) {
        den_p *= pj - p[l] + ic;
        den_m *= pj - p[l] - ic;
        if (l != k) {
            num_p *= pj - q[l] + ic;
            num_m *= pj - q[l] - ic;
        }
    }
    return kI / (pj - q[k]) * (ic * num_p / den_p + ic * ephi * num_m / den_m);
}

// prod_{j,k} (p_j - q_k - ic) / (q_j - q_k - ic)
cplx prefactor(const double* p, const cplx* q, int n, double c) {
    const cplx ic(0.0, c);
    cplx num = 1.0, den = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            num *= p[j] - q[k] - ic;
            den *= q[j] - q[k] - ic;
        }
    return num / den;
}

cplx det2(cplx a11, cplx a12, cplx a21, cplx a22) { return a11 * a22 - a12 * a21; }

cplx det_small(const cplx* a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
}

struct WeightedPoints {
    std::vector<double> p;   // nodes
    std::vector<cplx> fac;   // weight * fermi(p) * e^{ipx} / 2pi
};

struct WeightedQPoints {
    std::vector<cplx> q;
    std::vector<cplx> fac;  // weight * e^{-iqx} / 2pi
};

// fully general sorted-tuple tensor sum; multiplicity (n!)^2 cancels 1/(n!)^2
cplx tensor_term(int n, const WeightedPoints& ps, const WeightedQPoints& qs,
                 const std::function<cplx(int, int)>& g_at, cplx ephi, double c) {
    const int mp = (int)ps.p.size(), mq = (int)qs.q.size();
    double pt[3];
    cplx qt[3], mm[9], gg[9];
    cplx total = 0.0;

    auto eval_tuple = [&](const int* pi, const int* qi) {
        for (int a = 0; a < n; ++a) pt[a] = ps.p[pi[a]];
        for (int a = 0; a < n; ++a) qt[a] = qs.q[qi[a]];
        for (int r = 0; r < n; ++r)
            for (int ccol = 0; ccol < n; ++ccol) {
                mm[r * n + ccol] = m_entry(pt, qt, n, r, ccol, ephi, c);
                gg[r * n + ccol] = g_at(pi[r], qi[ccol]);
            }
        cplx fac = prefactor(pt, qt, n, c);
        for (int a = 0; a < n; ++a) fac *= ps.fac[pi[a]] * qs.fac[qi[a]];
        return fac * det_small(mm, n) * det_small(gg, n);
    };

    int pi[3], qi[3];
    if (n == 1) {
        for (pi[0] = 0; pi[0] < mp; ++pi[0])
            for (qi[0] = 0; qi[0] < mq; ++qi[0]) total += eval_tuple(pi, qi);
    } else if (n == 2) {
        for (pi[0] = 0; pi[0] < mp; ++pi[0])
            for (pi[1] = pi[0] + 1; pi[1] < mp; ++pi[1])
                for (qi[0] = 0; qi[0] < mq; ++qi[0])
                    for (qi[1] = qi[0] + 1; qi[1] < mq; ++qi[1]) total += eval_tuple(pi, qi);
    } else {
        for (pi[0] = 0; pi[0] < mp; ++pi[0])
            for (pi[1] = pi[0] + 1; pi[1] < mp; ++pi[1])
                for (pi[2] = pi[1] + 1; pi[2] < mp; ++pi[2])
                    for (qi[0] = 0; qi[0] < mq; ++qi[0])
                        for (qi[1] = qi[0] + 1; qi[1] < mq; ++qi[1])
                            for (qi[2] = qi[1] + 1; qi[2] < mq; ++qi[2])
                                total += eval_tuple(pi, qi);
    }
    return total;
}

struct GenericContext {
    const thermo::GasParams* params;
    const thermo::DressedEnergy* eps;
    densityfn::DensitySolver solver;
    double c, T, x;
    cplx phi, ephi;
    double elevation;  // q-contour height for the elevated strategy
    double window;     // core half-width
    double p_win;      // half-width of the fermi-weight support
    GenericOptions opts;

    GenericContext(const thermo::GasParams& pr, const thermo::DressedEnergy& ep, double x_,
                   cplx phi_, const GenericOptions& o)
        : params(&pr), eps(&ep), solver(ep), c(pr.coupling.c), T(pr.T), x(x_), phi(phi_),
          ephi(std::exp(phi_)), opts(o) {
        p_win = std::sqrt(std::max(pr.mu, 0.0) + 27.6 * pr.T);
        window = p_win + 2.0;
        elevation = (o.elevation > 0.0) ? o.elevation : 1.0 / (1.0 + x_);
        // keep the contour clear of the exact q = p + ic collision checked by
        // the kernel assembly
        if (std::abs(elevation - c) < 1e-9 * (elevation + c)) elevation *= 0.875;
    }
};

// ---- elevated strategy, n = 1 ----
//
// For n = 1 the integrand is analytic in q everywhere above the real axis, so
// the contour runs at height `elevation` with descending tails: no truncation
// error, and the small-c spike structure near the real axis never appears.
cplx elevated_term_1(GenericContext& ctx) {
    const auto& grid = ctx.solver.grid();
    const int m = (int)grid.size();
    const cplx ic(0.0, ctx.c);

    grids::ComplexPath path =
        grids::winged_path(ctx.elevation, ctx.window, ctx.x, 96, ctx.opts.q_wing_nodes);

    std::vector<cplx> pfac(m);
    for (int i = 0; i < m; ++i) {
        const double p = grid.nodes[i];
        pfac[i] = grid.weights[i] * thermo::fermi_weight(*ctx.eps, p) *
                  std::exp(kI * (p * ctx.x)) / kTwoPi;
    }

    cplx total = 0.0;
    const cplx mcoef = kI * (1.0 - ctx.ephi);  // M(p,q) = i (1-e^phi)/(p-q) at n = 1
    for (std::size_t k = 0; k < path.size(); ++k) {
        const cplx q = path.nodes[k];
        const std::vector<cplx> col = ctx.solver.solve_column(q);
        cplx inner = 0.0;
        for (int i = 0; i < m; ++i) {
            const double p = grid.nodes[i];
            const cplx pref = (p - q - ic) / (-ic);
            inner += pfac[i] * pref * mcoef / (p - q) * col[i];
        }
        total += path.weights[k] * std::exp(-kI * q * ctx.x) / kTwoPi * inner;
    }
    return total;
}

// ---- elevated strategy, n = 2 ----
//
// q-pair quadrature in blocks: the core x core square in difference/mean
// coordinates (u graded toward u = 0 where the prefactor dips on the scale c),
// core x wing and wing x wing as plain products. p pairs likewise in
// difference/mean coordinates with the difference graded toward zero where
// the M products vary on the scale c.
struct PairRule {
    // ordered-pair representation: sum_k w[k] f(a[k], b[k]) with multiplicity
    // already folded into w
    std::vector<cplx> qa, qb;
    std::vector<cplx> w;
};

cplx elevated_term_2(GenericContext& ctx) {
    const auto& grid = ctx.solver.grid();
    const int m = (int)grid.size();
    const double c = ctx.c, x = ctx.x, Y = ctx.elevation, W = ctx.window;
    const cplx ic(0.0, c);
    const cplx ephi = ctx.ephi;

    // ---- p side: p1 = r + s/2, p2 = r - s/2, s > 0 doubled by symmetry ----
    // difference rule graded toward s = 0 (structure on the scale c) with
    // panel growth capped so the thermal scale stays resolved
    std::vector<double> s_nodes, s_w, r_nodes, r_w;
    {
        std::vector<double> t, wgl;
        grids::gauss_legendre_raw(ctx.opts.pair_panel_nodes, t, wgl);
        const double cap = 1.0;
        double lo = 0.0, hi = std::min(0.5 * c, 0.25);
        while (lo < 2.0 * ctx.p_win) {
            hi = std::min(hi, 2.0 * ctx.p_win);
            const double xm = 0.5 * (hi + lo), xl = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < t.size(); ++i) {
                s_nodes.push_back(xm + xl * t[i]);
                s_w.push_back(xl * wgl[i]);
            }
            lo = hi;
            hi = std::min(2.0 * hi, hi + cap);
        }
    }
    const double r_width = std::min(0.8 * kPi / std::max(x, 0.3), 1.0);
    grids::composite_rule(-ctx.p_win, ctx.p_win, r_width, 8, r_nodes, r_w);

    const int ns = (int)s_nodes.size(), nr = (int)r_nodes.size();
    const int npp = ns * nr;  // p pairs
    // flat p-point list: 2 per pair
    std::vector<double> ppts(2 * npp);
    std::vector<cplx> pw(npp);  // combined pair weight (incl. symmetry factor 2)
    for (int is = 0; is < ns; ++is)
        for (int ir = 0; ir < nr; ++ir) {
            const int pp = is * nr + ir;
            const double p1 = r_nodes[ir] + 0.5 * s_nodes[is];
            const double p2 = r_nodes[ir] - 0.5 * s_nodes[is];
            ppts[2 * pp] = p1;
            ppts[2 * pp + 1] = p2;
            const double wf = thermo::fermi_weight(*ctx.eps, p1) *
                              thermo::fermi_weight(*ctx.eps, p2);
            pw[pp] = 2.0 * s_w[is] * r_w[ir] * wf *
                     std::exp(kI * ((p1 + p2) * x)) / (kTwoPi * kTwoPi);
        }

    // quadrature rows for G at the p points (q-independent)
    Eigen::MatrixXd rowmat(2 * npp, m);
    {
        std::vector<double> row(m);
        for (int ip = 0; ip < 2 * npp; ++ip) {
            ctx.solver.row_weights(ppts[ip], row);
            for (int l = 0; l < m; ++l) rowmat(ip, l) = row[l];
        }
    }

    // ---- q side ----
    const double core_width = std::min({0.4 * kPi / std::max(x, 0.1), 2.5 * Y, 2.0 * W});
    std::vector<double> u_nodes, u_w;
    {
        std::vector<double> t, wgl;
        grids::gauss_legendre_raw(ctx.opts.pair_panel_nodes, t, wgl);
        double a = std::min(0.5 * c, 0.5 * core_width);
        double lo = 0.0, hi = a;
        while (lo < 2.0 * W) {
            hi = std::min(hi, 2.0 * W);
            const double xm = 0.5 * (hi + lo), xl = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < t.size(); ++i) {
                u_nodes.push_back(xm + xl * t[i]);
                u_w.push_back(xl * wgl[i]);
            }
            lo = hi;
            hi = std::min(2.0 * hi, hi + core_width);
        }
    }
    const int nu = (int)u_nodes.size();

    std::vector<double> cp_nodes, cp_w;  // plain core rule (for cross blocks)
    grids::composite_rule(-W, W, core_width, ctx.opts.q_core_panel_nodes, cp_nodes, cp_w);

    // wings
    struct Wing {
        std::vector<cplx> q, w;
    } wing;
    {
        grids::ComplexPath p0 = grids::winged_path(Y, W, x, 8, ctx.opts.q_wing_nodes);
        // strip the core: winged_path appends left wing, core, right wing
        const std::size_t nw = ctx.opts.q_wing_nodes;
        const std::size_t core_n = p0.size() - 2 * nw;
        for (std::size_t i = 0; i < p0.size(); ++i) {
            if (i >= nw && i < nw + core_n) continue;
            wing.q.push_back(p0.nodes[i]);
            wing.w.push_back(p0.weights[i]);
        }
    }
    const int nwing = (int)wing.q.size();
    const int ncp = (int)cp_nodes.size();

    // helper: evaluate G at all p points for a batch of q values via one
    // matrix product (real rows x complex columns)
    auto g_at_points = [&](const std::vector<cplx>& qs, Eigen::MatrixXcd& out) {
        const int nq = (int)qs.size();
        Eigen::MatrixXd cre(m, nq), cim(m, nq);
        for (int k = 0; k < nq; ++k) {
            const std::vector<cplx> col = ctx.solver.solve_column(qs[k]);
            for (int l = 0; l < m; ++l) {
                cre(l, k) = col[l].real();
                cim(l, k) = col[l].imag();
            }
        }
        Eigen::MatrixXd gre = rowmat * cre, gim = rowmat * cim;
        out.resize(2 * npp, nq);
        for (int k = 0; k < nq; ++k)
            for (int ip = 0; ip < 2 * npp; ++ip) {
                out(ip, k) = cplx(gre(ip, k), gim(ip, k)) +
                             densityfn::driving(ppts[ip], qs[k], c);
            }
    };

    // inner accumulation over p pairs for one ordered q pair (q1, q2) whose
    // G values sit in columns k1, k2 of gtab
    auto accumulate_qpair = [&](cplx q1, cplx q2, cplx wq, const Eigen::MatrixXcd& gtab,
                                int k1, int k2) {
        const cplx e_q = std::exp(-kI * ((q1 + q2) * x)) / (kTwoPi * kTwoPi);
        const cplx den =
            (-ic) * (-ic) * (q1 - q2 - ic) * (q2 - q1 - ic);  // prod (q_j - q_k - ic)
        cplx acc = 0.0;
        for (int pp = 0; pp < npp; ++pp) {
            const double p1 = ppts[2 * pp], p2 = ppts[2 * pp + 1];
            const cplx a11 = p1 - q1 - ic, a12 = p1 - q2 - ic;
            const cplx a21 = p2 - q1 - ic, a22 = p2 - q2 - ic;
            const cplx pref = a11 * a12 * a21 * a22 / den;

            // M entries, cancelled form, n = 2
            const cplx dp1_p = ic * (p1 - p2 + ic), dp1_m = -ic * (p1 - p2 - ic);
            const cplx dp2_p = ic * (p2 - p1 + ic), dp2_m = -ic * (p2 - p1 - ic);
            const cplx m11 = kI / (p1 - q1) * (ic * (p1 - q2 + ic) / dp1_p +
                                               ic * ephi * (p1 - q2 - ic) / dp1_m);
            const cplx m12 = kI / (p1 - q2) * (ic * (p1 - q1 + ic) / dp1_p +
                                               ic * ephi * (p1 - q1 - ic) / dp1_m);
            const cplx m21 = kI / (p2 - q1) * (ic * (p2 - q2 + ic) / dp2_p +
                                               ic * ephi * (p2 - q2 - ic) / dp2_m);
            const cplx m22 = kI / (p2 - q2) * (ic * (p2 - q1 + ic) / dp2_p +
                                               ic * ephi * (p2 - q1 - ic) / dp2_m);
            const cplx detm = det2(m11, m12, m21, m22);

            const cplx g11 = gtab(2 * pp, k1), g12 = gtab(2 * pp, k2);
            const cplx g21 = gtab(2 * pp + 1, k1), g22 = gtab(2 * pp + 1, k2);
            const cplx detg = det2(g11, g12, g21, g22);

            acc += pw[pp] * pref * detm * detg;
        }
        return wq * e_q * acc;
    };

    cplx total = 0.0;

    // core x core through the (u, v) rhombus, one u row at a time
    {
        Eigen::MatrixXcd gtab;
        std::vector<cplx> qrow;
        std::vector<double> v_nodes, v_w;
        for (int iu = 0; iu < nu; ++iu) {
            const double u = u_nodes[iu];
            const double vmax = W - 0.5 * u;
            if (vmax <= 0.0) continue;
            v_nodes.clear();
            v_w.clear();
            grids::composite_rule(-vmax, vmax, core_width, ctx.opts.q_core_panel_nodes,
                                  v_nodes, v_w);
            const int nv = (int)v_nodes.size();
            qrow.resize(2 * nv);
            for (int iv = 0; iv < nv; ++iv) {
                qrow[2 * iv] = cplx(v_nodes[iv] + 0.5 * u, Y);
                qrow[2 * iv + 1] = cplx(v_nodes[iv] - 0.5 * u, Y);
            }
            g_at_points(qrow, gtab);
            for (int iv = 0; iv < nv; ++iv) {
                const cplx wq = 2.0 * u_w[iu] * v_w[iv];  // u > 0 symmetry
                total += accumulate_qpair(qrow[2 * iv], qrow[2 * iv + 1], wq, gtab,
                                          2 * iv, 2 * iv + 1);
            }
        }
    }

    // core x wing (factor 2 from ordering) and wing x wing
    {
        std::vector<cplx> qs(ncp + nwing);
        for (int i = 0; i < ncp; ++i) qs[i] = cplx(cp_nodes[i], Y);
        for (int i = 0; i < nwing; ++i) qs[ncp + i] = wing.q[i];
        Eigen::MatrixXcd gtab;
        g_at_points(qs, gtab);
        for (int i = 0; i < ncp; ++i)
            for (int jj = 0; jj < nwing; ++jj) {
                const cplx wq = 2.0 * cp_w[i] * wing.w[jj];
                total += accumulate_qpair(qs[i], qs[ncp + jj], wq, gtab, i, ncp + jj);
            }
        for (int i = 0; i < nwing; ++i)
            for (int jj = 0; jj < nwing; ++jj) {
                const cplx wq = wing.w[i] * wing.w[jj];
                total += accumulate_qpair(qs[ncp + i], qs[ncp + jj], wq, gtab, ncp + i,
                                          ncp + jj);
            }
    }

    return 0.25 * total;  // 1/(n!)^2 at n = 2
}

// ---- elevated strategy, n = 3: plain tensor on the winged contour ----
cplx elevated_term_3(GenericContext& ctx) {
    const auto& grid = ctx.solver.grid();
    const int m = (int)grid.size();

    grids::ComplexPath path =
        grids::winged_path(ctx.elevation, ctx.window, ctx.x, 64, 24);

    // subsample the p integration to keep the 6-dim tensor affordable
    std::vector<double> pn, pwts;
    grids::composite_rule(-ctx.p_win, ctx.p_win,
                          2.0 * ctx.p_win / std::max(3, ctx.opts.p_tuple_nodes / 6), 6, pn,
                          pwts);

    WeightedPoints ps;
    ps.p = pn;
    ps.fac.resize(pn.size());
    for (std::size_t i = 0; i < pn.size(); ++i)
        ps.fac[i] = pwts[i] * thermo::fermi_weight(*ctx.eps, pn[i]) *
                    std::exp(kI * (pn[i] * ctx.x)) / kTwoPi;

    WeightedQPoints qs;
    qs.q = path.nodes;
    qs.fac.resize(path.size());
    for (std::size_t k = 0; k < path.size(); ++k)
        qs.fac[k] = path.weights[k] * std::exp(-kI * path.nodes[k] * ctx.x) / kTwoPi;

    // G table: columns per q at the p nodes
    const int np = (int)pn.size(), nq = (int)path.size();
    std::vector<cplx> gt((std::size_t)np * nq);
    {
        Eigen::MatrixXd rowmat(np, m);
        std::vector<double> row(m);
        for (int i = 0; i < np; ++i) {
            ctx.solver.row_weights(pn[i], row);
            for (int l = 0; l < m; ++l) rowmat(i, l) = row[l];
        }
        for (int k = 0; k < nq; ++k) {
            const std::vector<cplx> col = ctx.solver.solve_column(path.nodes[k]);
            Eigen::VectorXd cre(m), cim(m);
            for (int l = 0; l < m; ++l) {
                cre(l) = col[l].real();
                cim(l) = col[l].imag();
            }
            Eigen::VectorXd gre = rowmat * cre, gim = rowmat * cim;
            for (int i = 0; i < np; ++i)
                gt[(std::size_t)i * nq + k] =
                    cplx(gre(i), gim(i)) + densityfn::driving(pn[i], path.nodes[k], ctx.c);
        }
    }
    auto g_at = [&](int i, int k) { return gt[(std::size_t)i * nq + k]; };

    return tensor_term(3, ps, qs, g_at, ctx.ephi, ctx.c);
}

// ---- spec-contour strategy: plain tensor on the caller's low contour ----
cplx contour_term(GenericContext& ctx, int n, const grids::ContourSpec& contour) {
    const auto& grid = ctx.solver.grid();
    const int m = (int)grid.size();

    auto cn = grids::contour_nodes(contour);
    WeightedQPoints qs;
    qs.q.resize(cn.size());
    qs.fac.resize(cn.size());
    for (std::size_t k = 0; k < cn.size(); ++k) {
        qs.q[k] = cn[k].first;
        qs.fac[k] = cn[k].second * std::exp(-kI * cn[k].first * ctx.x) / kTwoPi;
    }

    WeightedPoints ps;
    ps.p = grid.nodes;
    ps.fac.resize(m);
    for (int i = 0; i < m; ++i)
        ps.fac[i] = grid.weights[i] * thermo::fermi_weight(*ctx.eps, grid.nodes[i]) *
                    std::exp(kI * (grid.nodes[i] * ctx.x)) / kTwoPi;

    const int nq = (int)qs.q.size();
    std::vector<cplx> gt((std::size_t)m * nq);
    for (int k = 0; k < nq; ++k) {
        const std::vector<cplx> col = ctx.solver.solve_column(qs.q[k]);
        for (int i = 0; i < m; ++i) gt[(std::size_t)i * nq + k] = col[i];
    }
    auto g_at = [&](int i, int k) { return gt[(std::size_t)i * nq + k]; };

    return tensor_term(n, ps, qs, g_at, ctx.ephi, ctx.c);
}

}  // namespace

std::vector<cplx> generic_terms(const thermo::GasParams& params,
                                const thermo::DressedEnergy& eps, double x, cplx phi,
                                int n_max, const grids::ContourSpec& contour,
                                const GenericOptions& opts) {
    params.validate();
    if (params.coupling.kind != thermo::Coupling::Kind::finite)
        throw std::invalid_argument("genfun_generic: finite coupling required");
    if (!(x >= 0.0)) throw std::invalid_argument("genfun_generic: x must be non-negative");
    if (n_max < 0 || n_max > 3)
        throw std::invalid_argument("genfun_generic: n_max must be between 0 and 3");
    if (!eps.converged())
        throw std::invalid_argument("genfun_generic: dressed energy has not converged");
    if (!(contour.shift > 0.0) || !(contour.shift < params.coupling.c))
        throw std::domain_error(
            "genfun_generic: contour shift must satisfy 0 < shift < c");

    GenericContext ctx(params, eps, x, phi, opts);
    std::vector<cplx> terms;
    for (int n = 1; n <= n_max; ++n) {
        if (opts.strategy == GenericOptions::Strategy::spec_contour) {
            terms.push_back(contour_term(ctx, n, contour));
        } else {
            if (n == 1)
                terms.push_back(elevated_term_1(ctx));
            else if (n == 2)
                terms.push_back(elevated_term_2(ctx));
            else
                terms.push_back(elevated_term_3(ctx));
        }
    }
    return terms;
}

SeriesResult genfun_generic(const thermo::GasParams& params, const thermo::DressedEnergy& eps,
                            double x, double phi, int n_max, const grids::ContourSpec& contour,
                            const grids::LineGrid& grid, const GenericOptions& opts) {
    if (grid.size() != eps.grid().size() || grid.nodes != eps.grid().nodes)
        throw std::invalid_argument("genfun_generic: grid must match the dressed-energy grid");
    const std::vector<cplx> terms =
        generic_terms(params, eps, x, cplx(phi, 0.0), n_max, contour, opts);
    SeriesResult out;
    out.n_max = n_max;
    out.terms.assign(1, 1.0);
    out.imag_defect = 0.0;
    for (const cplx& t : terms) {
        out.terms.push_back(t.real());
        out.imag_defect = std::max(out.imag_defect, std::abs(t.imag()));
    }
    out.total = 0.0;
    for (double t : out.terms) out.total += t;
    out.tail_estimate = std::abs(out.terms.back());
    return out;
}

}  // namespace bosegas::genfun
