#include "mm/laurent.hpp"

#include <cctype>

namespace mm {
namespace {

// expr   := ['-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' signed_int)?
// base   := int ('/' int)? | ident | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    LaurentPolynomial run() {
        LaurentPolynomial p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    LaurentPolynomial expr() {
        bool neg = accept('-');
        LaurentPolynomial p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept('+')) {
                p = p + term();
            } else if (accept('-')) {
                p = p - term();
            } else {
                return p;
            }
        }
    }

    LaurentPolynomial term() {
        LaurentPolynomial p = factor();
        while (accept('*')) p = p * factor();
        return p;
    }

    LaurentPolynomial factor() {
        LaurentPolynomial b = base();
        if (accept('^')) {
            std::size_t at = pos_;
            int k = signed_int(at);
            try {
                return b.pow(k);
            } catch (const std::domain_error&) {
                throw ParseError("negative exponent of a non-monomial", at);
            }
        }
        return b;
    }

    int signed_int(std::size_t at) {
        skip_ws();
        at = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("exponent not an integer", at);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000) throw ParseError("exponent too large", at);
            ++pos_;
        }
        return static_cast<int>(neg ? -v : v);
    }

    LaurentPolynomial base() {
        char c = peek();
        std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            LaurentPolynomial p = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = integer();
            if (accept('/')) {
                skip_ws();
                std::size_t dat = pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw ParseError("expected integer denominator", dat);
                BigInt den = integer();
                if (den == 0) throw ParseError("zero denominator", dat);
                return LaurentPolynomial::constant(Rational(num, den));
            }
            return LaurentPolynomial::constant(Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])))) {
                name.push_back(text_[pos_]);
                ++pos_;
            }
            return LaurentPolynomial::variable(name);
        }
        if (c == '\0') throw ParseError("unexpected end of input", at);
        throw ParseError(std::string("unknown token '") + c + "'", at);
    }

    BigInt integer() {
        BigInt v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }
};

} // namespace

LaurentPolynomial parse(std::string_view text) { return Parser(text).run(); }

} // namespace mm
