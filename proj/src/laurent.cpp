#include "mm/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace mm {

void LaurentPolynomial::insert_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPolynomial LaurentPolynomial::constant(Rational c) {
    LaurentPolynomial p;
    if (c != 0) p.terms_.emplace(Exponents{}, std::move(c));
    return p;
}

LaurentPolynomial LaurentPolynomial::variable(const std::string& name) {
    LaurentPolynomial p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

LaurentPolynomial LaurentPolynomial::monomial(std::vector<std::string> vars,
                                              Exponents exps, Rational coeff) {
    if (vars.size() != exps.size())
        throw std::invalid_argument("monomial: vars/exps size mismatch");
    LaurentPolynomial p;
    p.vars_ = std::move(vars);
    if (coeff != 0) p.terms_.emplace(std::move(exps), std::move(coeff));
    return p;
}

bool LaurentPolynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational LaurentPolynomial::coefficient(
    const std::vector<std::pair<std::string, int>>& m) const {
    Exponents e(vars_.size(), 0);
    for (const auto& [name, k] : m) {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
            if (k != 0) return 0;
            continue;
        }
        e[static_cast<std::size_t>(it - vars_.begin())] = k;
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentPolynomial::depends_on(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return false;
    std::size_t i = static_cast<std::size_t>(it - vars_.begin());
    for (const auto& [e, c] : terms_)
        if (e[i] != 0) return true;
    return false;
}

int LaurentPolynomial::min_exponent(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || terms_.empty()) return 0;
    std::size_t i = static_cast<std::size_t>(it - vars_.begin());
    int m = terms_.begin()->first[i];
    for (const auto& [e, c] : terms_) m = std::min(m, e[i]);
    return m;
}

int LaurentPolynomial::max_exponent(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || terms_.empty()) return 0;
    std::size_t i = static_cast<std::size_t>(it - vars_.begin());
    int m = terms_.begin()->first[i];
    for (const auto& [e, c] : terms_) m = std::max(m, e[i]);
    return m;
}

LaurentPolynomial LaurentPolynomial::with_vars(
    const std::vector<std::string>& newvars) const {
    std::vector<int> pos(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
        if (it == newvars.end()) {
            // must be unused
            for (const auto& [e, c] : terms_)
                if (e[i] != 0)
                    throw std::invalid_argument("with_vars: dropping used variable " + vars_[i]);
        } else {
            pos[i] = static_cast<int>(it - newvars.begin());
        }
    }
    LaurentPolynomial r;
    r.vars_ = newvars;
    for (const auto& [e, c] : terms_) {
        Exponents ne(newvars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (pos[i] >= 0) ne[static_cast<std::size_t>(pos[i])] = e[i];
        r.insert_term(ne, c);
    }
    return r;
}

// Aligns a and b over the union variable list (a's order first, then b's new
// variables in order of appearance).
LaurentPolynomial align_binary(const LaurentPolynomial& a, const LaurentPolynomial& b,
                               LaurentPolynomial& oa, LaurentPolynomial& ob) {
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    oa = a.with_vars(u);
    ob = b.with_vars(u);
    LaurentPolynomial r;
    r.vars_ = u;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial a, b;
    LaurentPolynomial r = align_binary(*this, o, a, b);
    r.terms_ = a.terms_;
    for (const auto& [e, c] : b.terms_) r.insert_term(e, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
    return *this + (-o);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial a, b;
    LaurentPolynomial r = align_binary(*this, o, a, b);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::pow(int k) const {
    if (k == 0) return constant(1);
    if (k < 0) {
        if (terms_.size() != 1)
            throw std::domain_error("negative power of a non-monomial");
        const auto& [e, c] = *terms_.begin();
        Exponents ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] * k;
        Rational nc = 1;
        Rational inv = Rational(denominator(c), numerator(c));
        for (int j = 0; j < -k; ++j) nc *= inv;
        LaurentPolynomial r;
        r.vars_ = vars_;
        r.insert_term(ne, nc);
        return r;
    }
    LaurentPolynomial base = *this;
    LaurentPolynomial r = constant(1);
    int n = k;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::substitute_inverse() const {
    LaurentPolynomial r;
    r.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        Exponents ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
        r.insert_term(ne, c);
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::shift(const std::string& var, int k) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    LaurentPolynomial r;
    if (it == vars_.end()) {
        r.vars_ = vars_;
        r.vars_.push_back(var);
        for (const auto& [e, c] : terms_) {
            Exponents ne = e;
            ne.push_back(k);
            r.insert_term(ne, c);
        }
        return r;
    }
    std::size_t i = static_cast<std::size_t>(it - vars_.begin());
    r.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        ne[i] += k;
        r.insert_term(ne, c);
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::canonical() const {
    // keep only variables that occur, sorted by name
    std::vector<std::string> used;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (depends_on(vars_[i])) used.push_back(vars_[i]);
    std::sort(used.begin(), used.end());
    std::vector<int> pos(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(used.begin(), used.end(), vars_[i]);
        if (it != used.end()) pos[i] = static_cast<int>(it - used.begin());
    }
    LaurentPolynomial r;
    r.vars_ = used;
    for (const auto& [e, c] : terms_) {
        Exponents ne(used.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (pos[i] >= 0) ne[static_cast<std::size_t>(pos[i])] = e[i];
        r.insert_term(ne, c);
    }
    return r;
}

bool LaurentPolynomial::operator==(const LaurentPolynomial& o) const {
    LaurentPolynomial a = canonical(), b = o.canonical();
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

std::complex<double> LaurentPolynomial::evaluate(
    std::span<const std::complex<double>> point) const {
    if (point.size() != vars_.size())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    auto ipow = [](std::complex<double> z, int k) {
        if (k < 0) {
            if (z == std::complex<double>(0.0, 0.0))
                throw std::domain_error("evaluate: zero coordinate with negative exponent");
            z = 1.0 / z;
            k = -k;
        }
        std::complex<double> r = 1.0;
        while (k > 0) {
            if (k & 1) r *= z;
            z *= z;
            k >>= 1;
        }
        return r;
    };
    std::complex<double> s = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= ipow(point[i], e[i]);
        s += t;
    }
    return s;
}

std::string LaurentPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (a < 0) {
            os << (first ? "-" : "-");
            a = -a;
        } else if (!first) {
            os << "+";
        }
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        bool coeff_written = false;
        if (a != 1 || !any_var) {
            os << numerator(a);
            if (denominator(a) != 1) os << "/" << denominator(a);
            coeff_written = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (coeff_written) os << "*";
            os << vars_[i];
            if (e[i] != 1) os << "^" << e[i];
            coeff_written = true;
        }
        first = false;
    }
    return os.str();
}

std::vector<LaurentPolynomial> as_poly_in(const LaurentPolynomial& p,
                                          const std::string& var) {
    if (!p.depends_on(var))
        throw std::invalid_argument("as_poly_in: variable '" + var + "' absent");
    if (p.min_exponent(var) < 0)
        throw std::invalid_argument("as_poly_in: variable '" + var +
                                    "' carries negative exponents; shift first");
    int d = p.max_exponent(var);
    auto vit = std::find(p.vars().begin(), p.vars().end(), var);
    std::size_t vi = static_cast<std::size_t>(vit - p.vars().begin());
    std::vector<std::string> rest;
    for (const auto& v : p.vars())
        if (v != var) rest.push_back(v);
    std::vector<LaurentPolynomial> coeffs(static_cast<std::size_t>(d) + 1);
    for (auto& c : coeffs) c = LaurentPolynomial::monomial(rest, LaurentPolynomial::Exponents(rest.size(), 0), 0);
    for (const auto& [e, c] : p.terms()) {
        LaurentPolynomial::Exponents ne;
        ne.reserve(e.size() - 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != vi) ne.push_back(e[i]);
        std::size_t k = static_cast<std::size_t>(e[vi]);
        coeffs[k] = coeffs[k] + LaurentPolynomial::monomial(rest, ne, c);
    }
    return coeffs;
}

std::pair<LaurentPolynomial, int> shift_var_nonneg(const LaurentPolynomial& p,
                                                   const std::string& var) {
    int m = p.min_exponent(var);
    if (m >= 0) return {p, 0};
    return {p.shift(var, -m), -m};
}

} // namespace mm
