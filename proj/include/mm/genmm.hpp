#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mm/laurent.hpp"
#include "mm/measure.hpp"

namespace mm {

enum class Family { one_minus_x, ratio, golden };

struct FamilySpec {
    Family family;
    int n = 1;
};

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

/// One member of the family in the given variable.
LaurentPolynomial family_poly(Family f, const std::string& var);

/// log of the sup norm of |P| on the circle (infinite for the ratio family).
double family_log_sup_norm(Family f);

/// Data reducing the max-of-n torus integral to one dimension: |P(e(theta))|
/// depends on theta only through a statistic u whose CDF under uniform theta
/// is known in closed form.
struct MonotoneProfile {
    std::function<double(double)> g;    // |P| as a function of u
    std::function<double(double)> icdf; // inverse CDF of u
    std::function<double(double)> h;    // u as a function of theta (validation)
    LaurentPolynomial poly;             // the member polynomial (validation)
};

MonotoneProfile family_profile(Family f);

/// Torus average of max(log|f_1|,...,log|f_r|).
MeasureResult gmm_direct(const std::vector<LaurentPolynomial>& fs,
                         const QuadratureConfig& cfg);

/// Direct estimator specialized to a family: builds the n member functions
/// (rational for the ratio family) and averages the max of their logs.
MeasureResult gmm_direct_family(Family f, int n, const QuadratureConfig& cfg);

/// Max-order-statistic form: integral of log g(F^{-1}(v)) d(v^n). The profile
/// is validated against its polynomial before use.
MeasureResult gmm_order_stat(const MonotoneProfile& profile, int n,
                             const QuadratureConfig& cfg);

/// Closed forms for the three families (evaluated internally in extended
/// precision; the alternating zeta sums cancel to ~n digits).
double closed_one_minus_x(int n);
double closed_ratio(int n);
double closed_golden(int n);
double closed_family(Family f, int n);

/// The finite sum whose m -> infinity limit is log 2; equals
/// closed_one_minus_x(2m-1) by construction.
double limit_series(int m);

/// Heuristic sup norm on the torus: grid scan plus coordinate ascent.
/// Returns the value and the argmax angles (in [0,1) per variable).
std::pair<double, std::vector<double>> sup_norm(const LaurentPolynomial& p);

} // namespace mm
