// Command-line front end: Yang-Yang solving, generating-function evaluation,
// correlator sweeps, and the identity verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bosegas/correlators.hpp"
#include "bosegas/format.hpp"
#include "bosegas/genfun.hpp"
#include "bosegas/grids.hpp"
#include "bosegas/identities.hpp"
#include "bosegas/thermo.hpp"

namespace {

using bosegas::format::shortest;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;
constexpr int kExitInternal = 70;

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

// ---------------------------------------------------------------------------

struct TbaArgs {
    std::string c = "inf";
    double T = 0.0, mu = 0.0;
    int nodes = 128;
    double tol = 1e-12;
    std::string out;
};

int run_tba(const TbaArgs& a) {
    std::ofstream file;
    std::ostream& os = open_sink(a.out, file);

    os << "p,epsilon,fermi_weight\n";
    if (a.c == "inf") {
        auto grid = bosegas::grids::line_grid(a.nodes, bosegas::grids::default_scale(a.T, a.mu),
                                              bosegas::grids::MapKind::rational_map);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double p = grid.nodes[i];
            const double eps = p * p - a.mu;
            const double f = bosegas::thermo::fermi_weight_bare(a.T, a.mu, p);
            os << shortest(p) << ',' << shortest(eps) << ',' << shortest(f) << '\n';
        }
        return kExitOk;
    }

    const double c = std::stod(a.c);
    bosegas::thermo::GasParams params{bosegas::thermo::Coupling::finite(c), a.T, a.mu};
    auto grid = bosegas::thermo::thermal_grid(params, a.nodes);
    auto eps = bosegas::thermo::solve_dressed_energy(params, grid, a.tol, 400);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid.nodes[i];
        const double e = eps.values()[i];
        const double z = e / a.T;
        const double f = (z > 0.0) ? std::exp(-z) / (1.0 + std::exp(-z))
                                   : 1.0 / (1.0 + std::exp(z));
        os << shortest(p) << ',' << shortest(e) << ',' << shortest(f) << '\n';
    }
    if (!eps.converged()) {
        os << "# converged=false residual=" << shortest(eps.residual()) << '\n';
        return kExitNoConverge;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct GenfunArgs {
    std::string regime;
    double c = 0.0;
    double T = 0.0, mu = 0.0, x = 0.0, phi = 0.0;
    int nmax = -1;
    std::string method;
    bool as_json = false;
    bool fd_correlators = false;
    int nodes = 128;
};

int run_genfun(const GenfunArgs& a) {
    json report;
    report["regime"] = a.regime;
    report["params"] = {{"c", a.regime == "generic" ? json(a.c) : json(nullptr)},
                        {"T", a.T},
                        {"mu", a.mu},
                        {"x", a.x},
                        {"phi", a.phi},
                        {"nmax", nullptr}};
    std::vector<double> terms;
    double total = 0.0, tail = 0.0;

    if (a.regime == "impenetrable") {
        const int nmax = (a.nmax < 0) ? 8 : a.nmax;
        const std::string method = a.method.empty() ? "nystrom" : a.method;
        if (method == "series") {
            auto s = bosegas::genfun::genfun_impenetrable_series(a.T, a.mu, a.x, a.phi, nmax);
            terms = s.terms;
            total = s.total;
            tail = s.tail_estimate;
            report["params"]["nmax"] = nmax;
        } else if (method == "nystrom") {
            total = bosegas::genfun::genfun_impenetrable(
                a.T, a.mu, a.x, a.phi, bosegas::genfun::ImpenetrableMethod::nystrom);
        } else {
            throw CLI::ValidationError("--method must be nystrom or series");
        }
    } else if (a.regime == "free") {
        const int nmax = (a.nmax < 0) ? 8 : a.nmax;
        const std::string method = a.method.empty() ? "perm_series" : a.method;
        if (method == "perm_series") {
            auto s = bosegas::genfun::genfun_free_series(a.T, a.mu, a.x, a.phi, nmax);
            terms = s.terms;
            total = s.total;
            tail = s.tail_estimate;
            report["params"]["nmax"] = nmax;
        } else if (method == "resolvent") {
            total = bosegas::genfun::genfun_free(a.T, a.mu, a.x, a.phi,
                                                 bosegas::genfun::FreeMethod::resolvent);
        } else {
            throw CLI::ValidationError("--method must be perm_series or resolvent");
        }
    } else if (a.regime == "generic") {
        if (!(a.c > 0.0)) throw CLI::ValidationError("--c must be positive for --regime generic");
        const int nmax = (a.nmax < 0) ? 2 : a.nmax;
        report["params"]["nmax"] = nmax;
        bosegas::thermo::GasParams params{bosegas::thermo::Coupling::finite(a.c), a.T, a.mu};
        auto grid = bosegas::thermo::thermal_grid(params, a.nodes);
        auto eps = bosegas::thermo::solve_dressed_energy(params, grid, 1e-12, 400);
        if (!eps.converged())
            throw std::runtime_error("dressed-energy solve did not converge");
        bosegas::grids::ContourSpec contour{
            bosegas::genfun::default_contour_shift(a.c, a.x), 12.0, 96};
        auto s = bosegas::genfun::genfun_generic(params, eps, a.x, a.phi, nmax, contour, grid);
        terms = s.terms;
        total = s.total;
        tail = s.tail_estimate;

        if (a.fd_correlators) {
            // finite-difference diagnostics (approximate): complex step in phi,
            // central difference in x
            const double hx = 1e-3;
            const std::complex<double> hphi(0.0, 1e-3);
            auto gf = [&](double xx) {
                auto t = bosegas::genfun::generic_terms(params, eps, xx, hphi, nmax, contour);
                std::complex<double> sum = 1.0;
                for (auto& v : t) sum += v;
                return sum;
            };
            auto gp = gf(a.x + hx);
            auto gm = gf(a.x - hx);
            const double dens_fd = (gp.imag() - gm.imag()) / (2.0 * hx * hphi.imag());
            std::cerr << "# approximate finite-difference density (generic c): "
                      << shortest(dens_fd) << "\n";
        }
    } else {
        throw CLI::ValidationError("--regime must be generic, impenetrable or free");
    }

    report["terms"] = terms;
    report["total"] = total;
    report["tail_estimate"] = tail;

    if (a.as_json) {
        std::cout << report.dump(2) << '\n';
        return kExitOk;
    }
    std::cout << "regime = " << a.regime << '\n';
    if (a.regime == "generic") std::cout << "c = " << shortest(a.c) << '\n';
    std::cout << "T = " << shortest(a.T) << ", mu = " << shortest(a.mu) << ", x = "
              << shortest(a.x) << ", phi = " << shortest(a.phi) << '\n';
    for (std::size_t n = 0; n < terms.size(); ++n)
        std::cout << "term[" << n << "] = " << shortest(terms[n]) << '\n';
    std::cout << "total = " << shortest(total) << '\n';
    std::cout << "tail_estimate = " << shortest(tail) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CorrelateArgs {
    std::string regime;
    double T = 0.0, mu = 0.0, xmax = 0.0;
    int steps = 0;
    std::string route = "closed";
    std::string out;
    int threads = 1;
};

int run_correlate(const CorrelateArgs& a) {
    using bosegas::correlators::LimitRegime;
    const LimitRegime regime =
        (a.regime == "impenetrable") ? LimitRegime::impenetrable : LimitRegime::free_bosons;
    if (a.regime != "impenetrable" && a.regime != "free")
        throw CLI::ValidationError("--regime must be impenetrable or free");
    if (a.steps < 1) throw CLI::ValidationError("--steps must be >= 1");
    if (!(a.xmax > 0.0)) throw CLI::ValidationError("--xmax must be positive");
    if (a.route != "closed" && a.route != "series" && a.route != "both")
        throw CLI::ValidationError("--route must be closed, series or both");

    const double density = bosegas::correlators::density_closed(regime, a.T, a.mu);
    const int rows = a.steps + 1;

    struct Row {
        double x, g2, series_g2;
    };
    std::vector<Row> out_rows(rows);

    auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double x = a.xmax * i / a.steps;
            Row r{x, 0.0, 0.0};
            if (a.route != "series")
                r.g2 = bosegas::correlators::g2_closed(regime, a.T, a.mu, x);
            if (a.route != "closed")
                r.series_g2 =
                    bosegas::correlators::correlators_from_series(regime, a.T, a.mu, x).g2;
            if (a.route == "series") r.g2 = r.series_g2;
            out_rows[i] = r;
        }
    };

    const int nthreads = std::max(1, a.threads);
    if (nthreads == 1) {
        work(0, rows);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (rows + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk, hi = std::min(rows, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::ofstream file;
    std::ostream& os = open_sink(a.out, file);
    os << "x,density,g2,connected";
    if (a.route == "both") os << ",series_g2,abs_diff";
    os << '\n';
    for (const Row& r : out_rows) {
        const double connected = r.g2 - density * density;
        os << shortest(r.x) << ',' << shortest(density) << ',' << shortest(r.g2) << ','
           << shortest(connected);
        if (a.route == "both")
            os << ',' << shortest(r.series_g2) << ',' << shortest(std::abs(r.series_g2 - r.g2));
        os << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    int seeds = 25;
    bool strict = false;
    double threshold_scale = 1.0;
};

int run_verify(const VerifyArgs& a) {
    struct Check {
        std::string name, params;
        double max_residual = 0.0, threshold = 0.0;
    };
    std::vector<Check> checks;

    const double scale = a.threshold_scale * (a.strict ? 0.1 : 1.0);

    {
        Check ch{"nicelemma", "n=2..4 c in {1e-3,0.5,1,2}", 0.0, 1e-7 * scale};
        const double cs[4] = {1e-3, 0.5, 1.0, 2.0};
        for (int s = 0; s < a.seeds; ++s) {
            const int n = 2 + s % 3;
            const double c = cs[s % 4];
            ch.max_residual =
                std::max(ch.max_residual, bosegas::identities::check_nicelemma(n, c, 1000 + s));
        }
        checks.push_back(ch);
    }
    {
        Check ch{"quotient_identity", "n=2..5", 0.0, 1e-7 * scale};
        for (int s = 0; s < a.seeds; ++s) {
            const int n = 2 + s % 4;
            ch.max_residual = std::max(ch.max_residual,
                                       bosegas::identities::check_quotient_identity(n, 2000 + s));
        }
        checks.push_back(ch);
    }
    {
        Check ch{"qint", "u,v in [-2,2] x in {0.5,1,pi}", 0.0, 1e-8 * scale};
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        const double xs[3] = {0.5, 1.0, 3.14159265358979};
        for (int s = 0; s < a.seeds; ++s) {
            const double u = uni(rng), v = uni(rng);
            bosegas::grids::ContourSpec spec{0.4, 8.0, 96};
            ch.max_residual = std::max(
                ch.max_residual, bosegas::identities::check_qint(u, v, xs[s % 3], spec));
        }
        checks.push_back(ch);
    }
    {
        Check ch{"symmetrization", "n=2 free regime", 0.0, 1e-7 * scale};
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int s = 0; s < a.seeds; ++s) {
            const double T = 0.8 + 0.4 * uni(rng);
            const double mu = -1.2 + 0.4 * uni(rng);
            const double x = 0.6 + 0.6 * uni(rng);
            ch.max_residual = std::max(
                ch.max_residual, bosegas::identities::check_symmetrization(2, T, mu, x, s));
        }
        checks.push_back(ch);
    }

    bool all_ok = true;
    for (const Check& ch : checks) {
        const bool ok = ch.max_residual <= ch.threshold;
        all_ok = all_ok && ok;
        std::cout << ch.name << " [" << ch.params << "] seeds=" << a.seeds
                  << " max_residual=" << shortest(ch.max_residual)
                  << " threshold=" << shortest(ch.threshold) << (ok ? " PASS" : " FAIL")
                  << '\n';
    }
    return all_ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-temperature correlation functions of the 1D delta-interacting Bose gas"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags override");

    TbaArgs tba;
    auto* cmd_tba = app.add_subcommand("tba", "solve the Yang-Yang equation, write CSV");
    cmd_tba->add_option("--c", tba.c, "coupling strength, or 'inf' for impenetrable bosons");
    cmd_tba->add_option("--T", tba.T, "temperature")->required();
    cmd_tba->add_option("--mu", tba.mu, "chemical potential")->required();
    cmd_tba->add_option("--nodes", tba.nodes, "grid size")->default_val(128);
    cmd_tba->add_option("--tol", tba.tol, "fixed-point tolerance")->default_val(1e-12);
    cmd_tba->add_option("--out", tba.out, "output file (default stdout)");

    GenfunArgs gf;
    auto* cmd_gf = app.add_subcommand("genfun", "evaluate the generating function");
    cmd_gf->add_option("--regime", gf.regime, "generic | impenetrable | free")->required();
    cmd_gf->add_option("--c", gf.c, "coupling (generic regime)");
    cmd_gf->add_option("--T", gf.T, "temperature")->required();
    cmd_gf->add_option("--mu", gf.mu, "chemical potential")->required();
    cmd_gf->add_option("--x", gf.x, "interval length")->required();
    cmd_gf->add_option("--phi", gf.phi, "generating parameter")->required();
    cmd_gf->add_option("--nmax", gf.nmax, "series truncation order");
    cmd_gf->add_option("--method", gf.method,
                       "nystrom|series (impenetrable), perm_series|resolvent (free)");
    cmd_gf->add_flag("--json", gf.as_json, "machine-readable report");
    cmd_gf->add_flag("--fd-correlators", gf.fd_correlators,
                     "approximate finite-difference correlator diagnostics (generic)");
    cmd_gf->add_option("--nodes", gf.nodes, "thermal grid size")->default_val(128);

    CorrelateArgs co;
    auto* cmd_co = app.add_subcommand("correlate", "density and density-density correlator sweep");
    cmd_co->add_option("--regime", co.regime, "impenetrable | free")->required();
    cmd_co->add_option("--T", co.T, "temperature")->required();
    cmd_co->add_option("--mu", co.mu, "chemical potential")->required();
    cmd_co->add_option("--xmax", co.xmax, "sweep upper end")->required();
    cmd_co->add_option("--steps", co.steps, "number of steps")->required();
    cmd_co->add_option("--route", co.route, "closed | series | both")->default_val("closed");
    cmd_co->add_option("--out", co.out, "output file (default stdout)");
    cmd_co->add_option("--threads", co.threads, "worker threads for the sweep")->default_val(1);

    VerifyArgs ve;
    auto* cmd_ve = app.add_subcommand("verify", "run the identity verification suite");
    cmd_ve->add_option("--seeds", ve.seeds, "seeds per check")->default_val(25);
    cmd_ve->add_flag("--strict", ve.strict, "tighten thresholds tenfold");
    cmd_ve->add_option("--threshold-scale", ve.threshold_scale)
        ->default_val(1.0)
        ->group("");  // testing hook, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_tba)) return run_tba(tba);
        if (app.got_subcommand(cmd_gf)) return run_genfun(gf);
        if (app.got_subcommand(cmd_co)) return run_correlate(co);
        if (app.got_subcommand(cmd_ve)) return run_verify(ve);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
