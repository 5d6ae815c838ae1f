#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mm/rational.hpp"

namespace mm {

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
/// Immutable once built through the arithmetic operators; exponents may be
/// negative. Variable order is the order of first appearance.
class LaurentPolynomial {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    LaurentPolynomial() = default; // zero polynomial

    static LaurentPolynomial constant(Rational c);
    static LaurentPolynomial variable(const std::string& name);
    static LaurentPolynomial monomial(std::vector<std::string> vars,
                                      Exponents exps, Rational coeff);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }

    /// Coefficient of the monomial described by (var, exponent) pairs;
    /// variables not listed are taken to exponent 0.
    Rational coefficient(const std::vector<std::pair<std::string, int>>& m) const;

    bool depends_on(const std::string& var) const;
    int min_exponent(const std::string& var) const;
    int max_exponent(const std::string& var) const;

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;

    /// Integer power. Negative powers are only defined for single-term
    /// polynomials (monomials).
    LaurentPolynomial pow(int k) const;

    /// x_i -> x_i^{-1} for every variable.
    LaurentPolynomial substitute_inverse() const;

    /// Multiply by var^k.
    LaurentPolynomial shift(const std::string& var, int k) const;

    /// Mathematical equality: independent of variable discovery order and of
    /// variables that do not actually occur.
    bool operator==(const LaurentPolynomial& o) const;
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

    /// Re-express over a variable list that must contain all used variables.
    LaurentPolynomial with_vars(const std::vector<std::string>& newvars) const;

    std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void insert_term(const Exponents& e, const Rational& c);
    LaurentPolynomial canonical() const;
    friend LaurentPolynomial align_binary(const LaurentPolynomial&, const LaurentPolynomial&,
                                          LaurentPolynomial&, LaurentPolynomial&);
};

struct RationalFunction {
    LaurentPolynomial numerator;
    LaurentPolynomial denominator;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

LaurentPolynomial parse(std::string_view text);

/// Coefficients a_0 ... a_d of p viewed as a polynomial in `var`; requires
/// `var` to occur and to carry only nonnegative exponents.
std::vector<LaurentPolynomial> as_poly_in(const LaurentPolynomial& p,
                                          const std::string& var);

/// Multiply by the minimal power of `var` making its exponents nonnegative.
/// Returns the shifted polynomial and the shift applied.
std::pair<LaurentPolynomial, int> shift_var_nonneg(const LaurentPolynomial& p,
                                                   const std::string& var);

} // namespace mm
