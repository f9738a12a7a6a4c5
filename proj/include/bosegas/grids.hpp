#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace bosegas::grids {

using cplx = std::complex<double>;

enum class MapKind { finite_interval, rational_map, truncated_window };

// Quadrature rule on an interval or on the real line via a smooth mapping.
// Immutable after construction; safe to share across threads.
struct LineGrid {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // all positive
    MapKind map_kind = MapKind::finite_interval;
    double scale = 1.0;
    // underlying Gauss-Legendre abscissae in (-1,1) for mapped grids
    // (empty for finite_interval); interpolation works in this variable
    std::vector<double> t_nodes;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// m-point Gauss-Legendre rule on [a,b]; exact for polynomials of degree <= 2m-1.
LineGrid gauss_legendre(int m, double a, double b);

// Nodes/weights of the m-point Gauss-Legendre rule on (-1,1).
void gauss_legendre_raw(int m, std::vector<double>& t, std::vector<double>& w);

// Real-line rule. rational_map: p = scale*t/(1-t^2) on Gauss-Legendre t;
// truncated_window: plain Gauss-Legendre on [-L,L] with L = scale*sqrt(ln 1e16),
// wide enough that the T=1, mu=0 Fermi weight is below 1e-16 outside.
LineGrid line_grid(int m, double scale, MapKind kind);

// Scale heuristic covering the thermal Fermi surface.
double default_scale(double T, double mu);

// Shifted contour R + i*shift truncated to |Re q| <= window.
struct ContourSpec {
    double shift;     // > 0
    double window;    // > 0
    int node_count;   // >= 2
};

// Nodes q_k = t_k + i*shift with t_k Gauss-Legendre on [-window, window];
// the contour is a horizontal translate, so dq = dt and the weights are real.
std::vector<std::pair<cplx, cplx>> contour_nodes(const ContourSpec& spec);

// General complex quadrature path: sum_i weights[i] * f(nodes[i]) approximates
// the contour integral of f along the path.
struct ComplexPath {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    cplx integrate(F&& f) const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Horizontal segment [-window, window] + i*height, composite Gauss-Legendre
// panels sized to resolve e^{-iqx} oscillation of frequency x.
ComplexPath horizontal_path(double height, double window, double x, int min_nodes = 48);

// Horizontal core plus outward-descending 45-degree tails ("wings").
// For integrands analytic above the real axis outside |Re q| < window and
// decaying at least like 1/q^2, the wings integrate the tails essentially
// exactly: e^{-iqx} decays along them for x >= 0, and for x = 0 the mapped
// rule still captures the algebraic tail.
ComplexPath winged_path(double height, double window, double x,
                        int min_core_nodes = 48, int wing_nodes = 48);

// Window-doubling driver: evaluate(window) is recomputed with window doubled
// until the last doubling changes the result by less than rel_tol relatively,
// capped at 2^max_doublings * window0. Returns the last value.
cplx adaptive_window_integral(const std::function<cplx(double)>& evaluate,
                              double window0, double rel_tol = 1e-10,
                              int max_doublings = 10);

// Composite Gauss-Legendre on [a,b] with panel width at most max_width.
void composite_rule(double a, double b, double max_width, int nodes_per_panel,
                    std::vector<double>& nodes, std::vector<double>& weights);

// Rule on (0, s_max] with panels graded geometrically from the first panel
// [0, a_min] upward (panel width doubles), resolving structure at scale a_min
// near the origin without a global fine mesh.
void graded_half_rule(double a_min, double s_max, int nodes_per_panel,
                      std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace bosegas::grids
