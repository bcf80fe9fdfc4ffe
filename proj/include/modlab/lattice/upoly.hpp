#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "modlab/common.hpp"
#include "modlab/lattice/int_matrix.hpp"

namespace modlab {

// Dense univariate polynomial over Q, coefficients in ascending degree.
// The zero polynomial has an empty coefficient list.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly from_cubic(const MonicCubic& p) {
        return UPoly({Rational(p[3]), Rational(p[2]), Rational(p[1]), Rational(p[0])});
    }

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long long>(k);
        return UPoly(std::move(d));
    }

    UPoly monic() const {
        if (is_zero()) return {};
        std::vector<Rational> d = c_;
        const Rational lc = leading();
        for (auto& v : d) v /= lc;
        return UPoly(std::move(d));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const Rational& s, const UPoly& a) {
        std::vector<Rational> r = a.c_;
        for (auto& v : r) v *= s;
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly&, const UPoly&) = default;

    // Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DomainError("UPoly: division by zero polynomial");
        std::vector<Rational> rem = a.c_;
        if (a.degree() < b.degree()) return {UPoly{}, a};
        std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const Rational lc = b.leading();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            const auto top = static_cast<std::size_t>(k + b.degree());
            const Rational f = rem[top] / lc;
            quo[static_cast<std::size_t>(k)] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UPoly x_minus(const Rational& r) { return UPoly({-r, Rational(1)}); }

// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

struct ExtendedGcd {
    UPoly g, s, t;  // g = s*a + t*b, g monic
};

inline ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0({Rational(1)}), s1, t0, t1({Rational(1)});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Rational inv = Rational(1) / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return divmod(p, gcd(p, p.derivative())).first.monic();
}

// Sturm chain of a squarefree polynomial.
class SturmChain {
public:
    explicit SturmChain(const UPoly& p) {
        chain_.push_back(p);
        if (p.degree() <= 0) return;
        chain_.push_back(p.derivative());
        while (true) {
            UPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero()) break;
            chain_.push_back(Rational(-1) * r);
        }
    }

    int sign_changes(const Rational& x) const {
        int changes = 0, last = 0;
        for (const auto& q : chain_) {
            const int s = q(x).sign();
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    int sign_changes_at_neg_infinity() const {
        int changes = 0, last = 0;
        for (const auto& q : chain_) {
            if (q.is_zero()) continue;
            int s = q.leading().sign();
            if (q.degree() % 2 == 1) s = -s;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    // Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }
    // Number of distinct real roots in (-inf, b].
    int count_below(const Rational& b) const { return sign_changes_at_neg_infinity() - sign_changes(b); }

private:
    std::vector<UPoly> chain_;
};

// Integer upper bound on |root| for a polynomial with rational coefficients:
// 1 + max |c_k / c_n|, rounded up.
inline BigInt cauchy_bound(const UPoly& p) {
    Rational m = 0;
    for (int k = 0; k < p.degree(); ++k)
        m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(k)) / p.leading())));
    Rational b = 1 + m;
    BigInt n = boost::multiprecision::numerator(b), d = boost::multiprecision::denominator(b);
    return (n + d - 1) / d;
}

// Rational roots of an integer-coefficient polynomial (constant term nonzero or zero).
inline std::vector<Rational> rational_roots(const UPoly& p) {
    std::vector<Rational> roots;
    if (p.degree() <= 0) return roots;
    UPoly q = p;
    if (q.coeff(0) == 0) {
        roots.emplace_back(0);
        while (q.coeff(0) == 0) q = divmod(q, UPoly({Rational(0), Rational(1)})).first;
    }
    if (q.degree() <= 0) return roots;
    // Clear denominators so that the rational root theorem applies.
    BigInt lcm = 1;
    for (const auto& c : q.coeffs()) {
        BigInt d = boost::multiprecision::denominator(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    const BigInt a0 = abs(boost::multiprecision::numerator(Rational(q.coeff(0) * lcm)));
    const BigInt an = abs(boost::multiprecision::numerator(Rational(q.leading() * lcm)));
    auto divisors = [](const BigInt& n) {
        std::vector<BigInt> out;
        for (BigInt d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                out.push_back(d);
                if (d * d != n) out.push_back(n / d);
            }
        return out;
    };
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an))
            for (int s : {1, -1}) {
                Rational r(s * num, den);
                if (q(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline std::string to_string(const UPoly& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational c = p.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        const Rational a = abs(c);
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        const bool unit = a == 1 && k > 0;
        if (!unit) s += modlab::to_string(a);
        if (k > 0) s += (unit ? "" : "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
}

}  // namespace modlab
