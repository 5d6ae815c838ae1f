#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mm/genmm.hpp"

namespace mm {

/// Expression tree for exact closed-form values: rationals, pi, sqrt(5),
/// zeta/beta values, polylogarithms at constant arguments, and arithmetic.
struct ClosedForm {
    enum class Op { rat, pi, sqrt5, log, zeta, beta, li, zagl, add, mul, div, pow, neg };

    Op op = Op::rat;
    Rational value;               // Op::rat
    int order = 0;                // zeta/beta/li/zagl order, pow exponent
    std::vector<ClosedForm> args;

    double eval() const;
    std::string str() const;
    nlohmann::json to_json() const;
    static ClosedForm from_json(const nlohmann::json& j);

    static ClosedForm rat(const Rational& r);
    static ClosedForm integer(long long n);
    static ClosedForm pi_const();
    static ClosedForm sqrt5_const();
    static ClosedForm zeta_of(int k);
    static ClosedForm beta_of(int s);
    static ClosedForm log_of(ClosedForm a);
    static ClosedForm li_of(int n, ClosedForm a);
    static ClosedForm zagl_of(int n, ClosedForm a);
    static ClosedForm sum(std::vector<ClosedForm> a);
    static ClosedForm product(std::vector<ClosedForm> a);
    static ClosedForm quotient(ClosedForm a, ClosedForm b);
    static ClosedForm power(ClosedForm a, int k);
    static ClosedForm negate(ClosedForm a);
};

/// One term of a formal combination sum c_i * L_n(g_i(x, y)).
struct RelationTerm {
    Rational coeff;
    std::function<std::complex<double>(std::complex<double>, std::complex<double>)> arg;
};

struct RelationSpec {
    std::string id;
    int order = 3;
    std::vector<RelationTerm> terms;
    bool pointwise = false; // constant relations ignore the sample points
    // rejects sample points too close to a degenerate denominator
    std::function<bool(std::complex<double>, std::complex<double>)> admissible;
};

/// Max over sample points of |sum c_i L_n(g_i)|; constant relations use one
/// implicit sample.
double relation_residual(
    const RelationSpec& rel,
    const std::vector<std::pair<std::complex<double>, std::complex<double>>>& pts);

const std::vector<RelationSpec>& builtin_relations();

enum class IdentityKind { mahler, gmm, polylog_relation, series };

struct IdentityRecord {
    std::string id;
    IdentityKind kind = IdentityKind::mahler;
    std::string input;        // polynomial text (mahler) or a description
    std::string reduce_var;   // Jensen reduction variable (mahler)
    FamilySpec family{Family::one_minus_x, 1};
    int series_m = 0;         // series kind: evaluation index
    ClosedForm closed_form;
    std::string source;
    double tolerance = 1e-4;
    long long default_samples = 0; // 0 = keep the caller's budget

    nlohmann::json to_json() const;
};

const std::vector<IdentityRecord>& registry();
const IdentityRecord& lookup(const std::string& id);

enum class VerifyMethod { automatic, jensen, direct, order_stat, closed_only };

VerifyMethod verify_method_from_string(const std::string& s);
std::string verify_method_to_string(VerifyMethod m);

struct VerificationReport {
    std::string id;
    double numeric_value = 0.0;
    double closed_value = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string method;
    double error_estimate = 0.0;
    long long samples_used = 0;
    unsigned long long seed = 0;

    nlohmann::json to_json() const;
};

/// Compares an independent numeric evaluation of the record against its
/// closed form. tol <= 0 uses the record's own tolerance.
VerificationReport verify(const std::string& id, VerifyMethod method,
                          const QuadratureConfig& cfg, double tol = 0.0);

/// Bespoke 2-D quadrature of the non-exact block: -integral of
/// eta_3(3)(2, x, z) over {|arg x|, |arg y|, |arg x + arg y| <= pi} with
/// z = (1 + x + 2xy)/(1 - x), divided by 2 pi^2. Target: log 2.
double log2_block(const QuadratureConfig& cfg = {});

/// sum_{k >= l} binom(k, l) lambda^k / k and its closed value
/// lambda^l / (l (1-lambda)^l).
double tail_sum(int l, double lambda);
double tail_closed(int l, double lambda);

/// 2 sum_{l >= 1} (1 - (-1)^l) / l^2, Euler-Maclaurin accelerated. = pi^2/2.
double inner_constant();

} // namespace mm
