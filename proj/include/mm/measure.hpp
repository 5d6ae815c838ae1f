#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mm/laurent.hpp"

namespace mm {

enum class QuadMethod { automatic, tensor, qmc, mc };

struct QuadratureConfig {
    QuadMethod method = QuadMethod::automatic;
    long long total_samples = 1'000'000;
    unsigned long long seed = 1;
    int adaptive_depth = 14;
    double singular_cutoff = 1e-12;
    double target_abs_error = 1e-7;
    int shifts = 8;
    int threads = 1;
};

struct MeasureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::string method;
    long long samples_used = 0;
    std::map<std::string, std::string> metadata;
};

/// Roots (with multiplicity) of c[0] + c[1] x + ... + c[d] x^d.
/// Aberth-Ehrlich iteration, companion-matrix eigenvalues on stagnation.
std::vector<std::complex<double>> roots(const std::vector<std::complex<double>>& coeffs,
                                        double tol = 1e-13);

/// Exact-route one-variable measure: log|a_d| + sum of log^+|root|.
double mahler_1var(const LaurentPolynomial& p);

/// Torus average of an arbitrary integrand (theta in [0,1)^dim mapped to
/// e^{2 pi i theta}); the shared driver behind the direct estimators.
/// Sampling order and accumulation order are fixed by (seed, method), so
/// results are reproducible bit-for-bit for a fixed thread count.
MeasureResult torus_average(
    const std::function<double(const std::vector<std::complex<double>>&)>& f,
    int dim, const QuadratureConfig& cfg);

/// Direct estimate of the torus average of log|p|.
MeasureResult mahler_direct(const LaurentPolynomial& p, const QuadratureConfig& cfg);

/// m(a_d) plus the (n-1)-torus integral of sum of log^+|alpha_j| with the
/// roots taken in `var`; adaptive tensor rules for <= 2 remaining variables,
/// shifted-lattice quasi-MC beyond that.
MeasureResult mahler_jensen_reduced(const LaurentPolynomial& p,
                                    const std::string& var,
                                    const QuadratureConfig& cfg);

/// Cleared, content-normalized form of R(x,y) R(x^-1,y^-1) - 1; its zero set
/// on the torus is where |R| = 1.
LaurentPolynomial boundary_curve(const RationalFunction& R);

} // namespace mm
