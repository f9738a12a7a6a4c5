#pragma once

// Test-only oracles, deliberately independent of the library's numerical
// paths: adaptive Gauss-Kronrod quadrature, cofactor determinants, and a
// dense-grid trapezoidal fixed-point solver for the dressed energy.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// adaptive Gauss(7)-Kronrod(15) on [a, b]
double gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-13, int max_depth = 40);

// \int_R f with a tanh-sinh style doubling of the window until stable
double integral_real_line(const std::function<double(double)>& f, double tol = 1e-13);

// determinant by recursive cofactor expansion, n <= 8
std::complex<double> cofactor_det(const std::vector<std::complex<double>>& a, int n);
double cofactor_det(const std::vector<double>& a, int n);

// dressed energy at momentum p for the Yang-Yang equation, solved by damped
// fixed point on a dense uniform grid with trapezoidal quadrature (spectrally
// accurate for these analytic integrands)
struct YangYangOracle {
    YangYangOracle(double c, double T, double mu, int nodes = 2000, double window = 10.0,
                   double tol = 1e-13, int max_iter = 2000);
    double eval(double p) const;  // linear interpolation between dense nodes
    double residual = 0.0;
    std::vector<double> grid, eps;
    double T, mu;
};

}  // namespace oracles
