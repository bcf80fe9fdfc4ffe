#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modlab/common.hpp"

namespace modlab {

// Exponent vector of a monomial; entries are non-negative.
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t n) : e_(n) {}
    explicit Exponent(std::vector<BigInt> e) : e_(std::move(e)) {
        for (const auto& v : e_)
            if (v < 0) throw DomainError("Exponent: negative entry " + v.str());
    }
    Exponent(std::initializer_list<long long> e) {
        for (long long v : e) {
            if (v < 0) throw DomainError("Exponent: negative entry " + std::to_string(v));
            e_.emplace_back(v);
        }
    }

    static Exponent unit(std::size_t n, std::size_t k) {
        Exponent e(n);
        e.e_[k] = 1;
        return e;
    }

    std::size_t size() const noexcept { return e_.size(); }
    const BigInt& operator[](std::size_t k) const { return e_[k]; }
    const std::vector<BigInt>& values() const noexcept { return e_; }

    BigInt degree() const {
        BigInt d = 0;
        for (const auto& v : e_) d += v;
        return d;
    }
    bool is_zero() const {
        for (const auto& v : e_)
            if (v != 0) return false;
        return true;
    }

    // Coordinatewise a <= b.
    bool divides(const Exponent& b) const {
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (e_[k] > b.e_[k]) return false;
        return true;
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b) {
        check(a, b);
        Exponent r(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }
    // Requires b.divides(a).
    friend Exponent operator-(const Exponent& a, const Exponent& b) {
        check(a, b);
        Exponent r(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            r.e_[k] = a.e_[k] - b.e_[k];
            if (r.e_[k] < 0) throw DomainError("Exponent: subtraction leaves negative entry");
        }
        return r;
    }

    friend bool operator==(const Exponent&, const Exponent&) = default;
    friend bool operator<(const Exponent& a, const Exponent& b) { return a.e_ < b.e_; }

    static void check(const Exponent& a, const Exponent& b) {
        if (a.size() != b.size())
            throw DimensionError("Exponent: length mismatch (" + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()) + ")");
    }

private:
    std::vector<BigInt> e_;
};

// Descending graded-lexicographic order: higher total degree first, ties broken
// lexicographically with z1 > z2 > ... .
struct GrlexDescending {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const BigInt da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] != b[k]) return a[k] > b[k];
        return false;
    }
};

inline std::vector<std::string> default_vars(std::size_t n = 3) {
    std::vector<std::string> v;
    for (std::size_t k = 1; k <= n; ++k) v.push_back("z" + std::to_string(k));
    return v;
}

// Sparse polynomial over Q. No zero coefficients are stored.
class SparsePoly {
public:
    using TermMap = std::map<Exponent, Rational, GrlexDescending>;

    SparsePoly() : SparsePoly(default_vars()) {}
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static SparsePoly constant(std::vector<std::string> vars, const Rational& c) {
        SparsePoly p(std::move(vars));
        p.add_term(Exponent(p.nvars()), c);
        return p;
    }
    static SparsePoly monomial(std::vector<std::string> vars, Exponent e, const Rational& c = 1) {
        SparsePoly p(std::move(vars));
        p.add_term(std::move(e), c);
        return p;
    }
    static SparsePoly variable(std::vector<std::string> vars, std::size_t k) {
        const std::size_t n = vars.size();
        return monomial(std::move(vars), Exponent::unit(n, k));
    }

    std::size_t nvars() const noexcept { return vars_.size(); }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coeff(Exponent(nvars())); }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    void add_term(Exponent e, const Rational& c) {
        if (e.size() != nvars())
            throw DimensionError("SparsePoly: exponent of length " + std::to_string(e.size()) + " in ring of " +
                                 std::to_string(nvars()) + " variables");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly with_vars(std::vector<std::string> vars) const {
        if (vars.size() != nvars()) throw DimensionError("SparsePoly: variable list has wrong length");
        SparsePoly p = *this;
        p.vars_ = std::move(vars);
        return p;
    }

    // Equality compares terms only; variable names are display data.
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars() == b.nvars() && a.terms_ == b.terms_;
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

namespace detail {
inline void check_ring(const SparsePoly& p, const SparsePoly& q, const char* op) {
    if (p.nvars() != q.nvars())
        throw DimensionError(std::string(op) + ": variable count mismatch (" + std::to_string(p.nvars()) + " vs " +
                             std::to_string(q.nvars()) + ")");
}
}  // namespace detail

inline SparsePoly poly_add(const SparsePoly& p, const SparsePoly& q) {
    detail::check_ring(p, q, "poly_add");
    SparsePoly r = p;
    for (const auto& [e, c] : q.terms()) r.add_term(e, c);
    return r;
}

inline SparsePoly poly_neg(const SparsePoly& p) {
    SparsePoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, -c);
    return r;
}

inline SparsePoly poly_sub(const SparsePoly& p, const SparsePoly& q) { return poly_add(p, poly_neg(q)); }

inline SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q) {
    detail::check_ring(p, q, "poly_mul");
    SparsePoly r(p.vars());
    for (const auto& [ea, ca] : p.terms())
        for (const auto& [eb, cb] : q.terms()) r.add_term(ea + eb, ca * cb);
    return r;
}

inline SparsePoly poly_scale(const SparsePoly& p, const Rational& s) {
    SparsePoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c * s);
    return r;
}

inline SparsePoly poly_pow(const SparsePoly& p, const BigInt& k) {
    SparsePoly r = SparsePoly::constant(p.vars(), 1);
    for (BigInt i = 0; i < k; ++i) r = poly_mul(r, p);
    return r;
}

inline SparsePoly operator+(const SparsePoly& p, const SparsePoly& q) { return poly_add(p, q); }
inline SparsePoly operator-(const SparsePoly& p, const SparsePoly& q) { return poly_sub(p, q); }
inline SparsePoly operator*(const SparsePoly& p, const SparsePoly& q) { return poly_mul(p, q); }

struct PrincipalFactor {
    Exponent vertex;
    SparsePoly unit;  // constant term a != 0; unit - a has zero constant term

    Rational constant() const { return unit.constant_term(); }
    SparsePoly remainder() const {  // F with F(0) = 0
        SparsePoly f = unit;
        f.add_term(Exponent(unit.nvars()), -constant());
        return f;
    }
};

// p = z^v * u with u(0) != 0, when the support has a unique coordinatewise-minimal element v.
inline std::optional<PrincipalFactor> factor_principal(const SparsePoly& p) {
    if (p.is_zero()) throw DomainError("factor_principal: zero polynomial");
    // The candidate is the coordinatewise minimum; it is a minimal element iff it lies in the support.
    std::vector<BigInt> lo = p.terms().begin()->first.values();
    for (const auto& [e, c] : p.terms())
        for (std::size_t k = 0; k < lo.size(); ++k) lo[k] = std::min(lo[k], e[k]);
    Exponent v(std::move(lo));
    if (p.coeff(v) == 0) return std::nullopt;
    SparsePoly u(p.vars());
    for (const auto& [e, c] : p.terms()) u.add_term(e - v, c);
    return PrincipalFactor{std::move(v), std::move(u)};
}

inline std::string monomial_string(const Exponent& e, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[k];
        if (e[k] != 1) s += "^" + e[k].str();
    }
    return s;
}

// Display form, parseable by parse_poly: "z1*z2^2*z3 + 3/2*z1 - 1".
inline std::string to_string(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        const Rational a = abs(c);
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        const std::string mono = monomial_string(e, p.vars());
        if (mono.empty()) s += to_string(a);
        else if (a == 1) s += mono;
        else s += to_string(a) + "*" + mono;
    }
    return s;
}

}  // namespace modlab
