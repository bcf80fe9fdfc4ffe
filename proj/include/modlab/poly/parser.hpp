#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "modlab/poly/sparse_poly.hpp"

namespace modlab {

// Recursive-descent parser for
//   expression := ('+'|'-')? term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := rational | variable ('^' integer)? | '(' expression ')'
//   rational   := integer ('/' integer)?
// Whitespace is insignificant; variables must be declared.
class PolyParser {
public:
    PolyParser(std::string_view text, std::vector<std::string> vars) : text_(text), vars_(std::move(vars)) {
        for (const auto& v : vars_)
            if (!is_identifier(v)) throw DomainError("parse_poly: invalid variable name '" + v + "'");
    }

    SparsePoly parse() {
        skip_ws();
        if (at_end()) fail("empty input");
        SparsePoly p = expression();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return p;
    }

private:
    SparsePoly expression() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            advance();
        }
        SparsePoly acc = term();
        if (negate) acc = poly_neg(acc);
        while (true) {
            skip_ws();
            if (peek() == '+') {
                advance();
                acc = poly_add(acc, term());
            } else if (peek() == '-') {
                advance();
                acc = poly_sub(acc, term());
            } else {
                return acc;
            }
        }
    }

    SparsePoly term() {
        SparsePoly acc = factor();
        while (true) {
            skip_ws();
            if (peek() != '*') return acc;
            advance();
            acc = poly_mul(acc, factor());
        }
    }

    SparsePoly factor() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            advance();
            SparsePoly inner = expression();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            advance();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = integer();
            BigInt den = 1;
            skip_ws();
            if (peek() == '/') {
                advance();
                skip_ws();
                const auto line = line_, col = col_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer denominator");
                den = integer();
                if (den == 0) throw ParseError("zero denominator", line, col);
            }
            return SparsePoly::constant(vars_, Rational(num, den));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto line = line_, col = col_;
            const std::string name = identifier();
            std::size_t k = 0;
            while (k < vars_.size() && vars_[k] != name) ++k;
            if (k == vars_.size()) throw ParseError("unknown variable '" + name + "'", line, col);
            Exponent e = Exponent::unit(vars_.size(), k);
            skip_ws();
            if (peek() == '^') {
                advance();
                skip_ws();
                if (peek() == '-') fail("negative exponent");
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent");
                std::vector<BigInt> v(vars_.size());
                v[k] = integer();
                e = Exponent(std::move(v));
            }
            return SparsePoly::monomial(vars_, std::move(e));
        }
        if (at_end()) fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    BigInt integer() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        return BigInt(digits);
    }

    std::string identifier() {
        std::string s;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            s += peek();
            advance();
        }
        return s;
    }

    static bool is_identifier(const std::string& s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
        return true;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

    std::string_view text_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

inline SparsePoly parse_poly(std::string_view text, std::vector<std::string> vars = default_vars()) {
    return PolyParser(text, std::move(vars)).parse();
}

}  // namespace modlab
