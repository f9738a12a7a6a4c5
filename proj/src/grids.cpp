#include "bosegas/grids.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bosegas::grids {

namespace {
constexpr double kPi = std::numbers::pi;
}

void gauss_legendre_raw(int m, std::vector<double>& t, std::vector<double>& w) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: node count must be >= 1");
    t.assign(m, 0.0);
    w.assign(m, 0.0);
    const double eps = 1e-15;
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on P_m starting from the Chebyshev-like estimate
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > eps);
        t[i] = -z;
        t[m - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[m - 1 - i] = w[i];
    }
}

LineGrid gauss_legendre(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: node count must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: requires a < b");
    std::vector<double> t, w;
    gauss_legendre_raw(m, t, w);
    LineGrid g;
    g.map_kind = MapKind::finite_interval;
    g.scale = 1.0;
    g.nodes.resize(m);
    g.weights.resize(m);
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        g.nodes[i] = xm + xl * t[i];
        g.weights[i] = xl * w[i];
    }
    return g;
}

LineGrid line_grid(int m, double scale, MapKind kind) {
    if (m < 2) throw std::invalid_argument("line_grid: node count must be >= 2");
    if (!(scale > 0.0)) throw std::invalid_argument("line_grid: scale must be positive");
    if (kind == MapKind::finite_interval)
        throw std::invalid_argument("line_grid: finite_interval is not a real-line map");

    if (kind == MapKind::truncated_window) {
        // window where the T=1, mu=0 Fermi weight drops below 1e-16
        const double L = scale * std::sqrt(std::log(1e16));
        LineGrid g = gauss_legendre(m, -L, L);
        g.map_kind = MapKind::truncated_window;
        g.scale = scale;
        return g;
    }

    // rational map p = scale * t / (1 - t^2), dp/dt = scale * (1 + t^2) / (1 - t^2)^2
    std::vector<double> t, w;
    gauss_legendre_raw(m, t, w);
    LineGrid g;
    g.map_kind = MapKind::rational_map;
    g.scale = scale;
    g.t_nodes = t;
    g.nodes.resize(m);
    g.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double ti = t[i];
        const double d = 1.0 - ti * ti;
        g.nodes[i] = scale * ti / d;
        g.weights[i] = w[i] * scale * (1.0 + ti * ti) / (d * d);
    }
    return g;
}

double default_scale(double T, double mu) {
    return std::sqrt(std::max(mu, 0.0) + 10.0 * T);
}

std::vector<std::pair<cplx, cplx>> contour_nodes(const ContourSpec& spec) {
    if (!(spec.shift > 0.0)) throw std::invalid_argument("contour_nodes: shift must be positive");
    if (!(spec.window > 0.0)) throw std::invalid_argument("contour_nodes: window must be positive");
    if (spec.node_count < 2) throw std::invalid_argument("contour_nodes: node_count must be >= 2");
    LineGrid base = gauss_legendre(spec.node_count, -spec.window, spec.window);
    std::vector<std::pair<cplx, cplx>> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        out[i] = {cplx(base.nodes[i], spec.shift), cplx(base.weights[i], 0.0)};
    return out;
}

void composite_rule(double a, double b, double max_width, int nodes_per_panel,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    const int npan = std::max(1, (int)std::ceil((b - a) / max_width));
    std::vector<double> t, w;
    gauss_legendre_raw(nodes_per_panel, t, w);
    const double h = (b - a) / npan;
    for (int p = 0; p < npan; ++p) {
        const double pa = a + p * h, xm = pa + 0.5 * h, xl = 0.5 * h;
        for (int i = 0; i < nodes_per_panel; ++i) {
            nodes.push_back(xm + xl * t[i]);
            weights.push_back(xl * w[i]);
        }
    }
}

void graded_half_rule(double a_min, double s_max, int nodes_per_panel,
                      std::vector<double>& nodes, std::vector<double>& weights) {
    if (!(a_min > 0.0) || !(s_max > a_min))
        throw std::invalid_argument("graded_half_rule: need 0 < a_min < s_max");
    std::vector<double> t, w;
    gauss_legendre_raw(nodes_per_panel, t, w);
    double lo = 0.0, hi = a_min;
    while (lo < s_max) {
        hi = std::min(hi, s_max);
        const double xm = 0.5 * (hi + lo), xl = 0.5 * (hi - lo);
        for (int i = 0; i < nodes_per_panel; ++i) {
            nodes.push_back(xm + xl * t[i]);
            weights.push_back(xl * w[i]);
        }
        lo = hi;
        hi = 2.0 * hi;
    }
}

ComplexPath horizontal_path(double height, double window, double x, int min_nodes) {
    // panel width: ~10 nodes per oscillation period 2*pi/x, and never wider
    // than the height (integrand features sit a distance ~height below)
    const double per = (x > 0.0) ? 2.0 * kPi / x : 4.0 * window;
    double width = std::min(std::max(per * 0.8, 1e-3), 2.0 * window);
    if (height > 0.0) width = std::min(width, 1.2 * height);
    std::vector<double> nodes, weights;
    int npp = 8;
    composite_rule(-window, window, width, npp, nodes, weights);
    while ((int)nodes.size() < min_nodes) {
        nodes.clear();
        weights.clear();
        npp += 4;
        composite_rule(-window, window, width, npp, nodes, weights);
    }
    ComplexPath path;
    path.nodes.reserve(nodes.size());
    path.weights.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        path.nodes.emplace_back(nodes[i], height);
        path.weights.emplace_back(weights[i], 0.0);
    }
    return path;
}

ComplexPath winged_path(double height, double window, double x,
                        int min_core_nodes, int wing_nodes) {
    ComplexPath path = horizontal_path(height, window, x, min_core_nodes);

    // wings: q(s) = +-(window + s/sqrt2) + i*(height - s/sqrt2), s in [0, inf)
    // mapped by s = S * r / (1 - r) on Gauss-Legendre r in (0,1)
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double S = std::max(8.0, 30.0 / (std::max(x, 0.02) * inv_sqrt2));
    std::vector<double> r, wr;
    gauss_legendre_raw(wing_nodes, r, wr);

    ComplexPath out;
    const std::size_t n = path.size() + 2 * wing_nodes;
    out.nodes.reserve(n);
    out.weights.reserve(n);

    const cplx dir_left = cplx(+inv_sqrt2, +inv_sqrt2);   // traversal toward the core
    const cplx dir_right = cplx(+inv_sqrt2, -inv_sqrt2);  // traversal away from the core
    for (int i = wing_nodes - 1; i >= 0; --i) {
        const double ri = 0.5 * (r[i] + 1.0);  // map (-1,1) -> (0,1)
        const double wi = 0.5 * wr[i];
        const double s = S * ri / (1.0 - ri);
        const double ds = S / ((1.0 - ri) * (1.0 - ri));
        out.nodes.emplace_back(-(window + s * inv_sqrt2), height - s * inv_sqrt2);
        out.weights.push_back(dir_left * (wi * ds));
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
        out.nodes.push_back(path.nodes[i]);
        out.weights.push_back(path.weights[i]);
    }
    for (int i = 0; i < wing_nodes; ++i) {
        const double ri = 0.5 * (r[i] + 1.0);
        const double wi = 0.5 * wr[i];
        const double s = S * ri / (1.0 - ri);
        const double ds = S / ((1.0 - ri) * (1.0 - ri));
        out.nodes.emplace_back(window + s * inv_sqrt2, height - s * inv_sqrt2);
        out.weights.push_back(dir_right * (wi * ds));
    }
    return out;
}

cplx adaptive_window_integral(const std::function<cplx(double)>& evaluate,
                              double window0, double rel_tol, int max_doublings) {
    double window = window0;
    cplx prev = evaluate(window);
    for (int k = 0; k < max_doublings; ++k) {
        window *= 2.0;
        cplx cur = evaluate(window);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace bosegas::grids
