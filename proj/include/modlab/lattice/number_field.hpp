#pragma once

#include <array>
#include <memory>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "modlab/lattice/root_isolation.hpp"

namespace modlab {

using Float200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

// Context for Q(mu): the minimal polynomial of mu (monic, irreducible, degree 1..3)
// together with an isolating interval that selects the real embedding.
class NumberField {
public:
    NumberField(UPoly minimal_poly, RationalInterval interval)
        : modulus_(minimal_poly.monic()), interval_(std::move(interval)) {
        if (modulus_.degree() < 1 || modulus_.degree() > 3)
            throw DomainError("NumberField: minimal polynomial must have degree 1, 2 or 3");
        if ((modulus_(interval_.lo) * modulus_(interval_.hi)).sign() >= 0)
            throw DomainError("NumberField: interval " + to_string(interval_) + " does not isolate a root");
    }

    const UPoly& modulus() const noexcept { return modulus_; }
    int degree() const noexcept { return modulus_.degree(); }
    const RationalInterval& interval() const noexcept { return interval_; }
    RealRoot root() const { return RealRoot(modulus_, interval_); }

private:
    UPoly modulus_;
    RationalInterval interval_;
};

// c0 + c1*mu + c2*mu^2, reduced modulo the minimal polynomial of mu.
class CubicFieldElement {
public:
    CubicFieldElement() = default;
    CubicFieldElement(std::shared_ptr<const NumberField> field, std::array<Rational, 3> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {
        *this = reduce(field_, as_poly());
    }

    static CubicFieldElement constant(std::shared_ptr<const NumberField> field, const Rational& q) {
        return {std::move(field), {q, Rational(0), Rational(0)}};
    }
    static CubicFieldElement generator(std::shared_ptr<const NumberField> field) {
        return {std::move(field), {Rational(0), Rational(1), Rational(0)}};
    }

    const std::shared_ptr<const NumberField>& field() const noexcept { return field_; }
    const std::array<Rational, 3>& coeffs() const noexcept { return c_; }
    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    UPoly as_poly() const { return UPoly({c_[0], c_[1], c_[2]}); }

    friend CubicFieldElement operator+(const CubicFieldElement& a, const CubicFieldElement& b) {
        return {pick(a, b), {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]}};
    }
    friend CubicFieldElement operator-(const CubicFieldElement& a, const CubicFieldElement& b) {
        return {pick(a, b), {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]}};
    }
    friend CubicFieldElement operator-(const CubicFieldElement& a) {
        return {a.field_, {-a.c_[0], -a.c_[1], -a.c_[2]}};
    }
    friend CubicFieldElement operator*(const CubicFieldElement& a, const CubicFieldElement& b) {
        return reduce(pick(a, b), a.as_poly() * b.as_poly());
    }
    friend CubicFieldElement operator*(const Rational& s, const CubicFieldElement& a) {
        return {a.field_, {s * a.c_[0], s * a.c_[1], s * a.c_[2]}};
    }
    friend bool operator==(const CubicFieldElement& a, const CubicFieldElement& b) { return a.c_ == b.c_; }

    CubicFieldElement inverse() const {
        if (is_zero()) throw DomainError("CubicFieldElement: inverse of zero");
        const auto eg = extended_gcd(as_poly(), field_->modulus());
        if (eg.g.degree() != 0) throw DomainError("CubicFieldElement: modulus is not irreducible");
        return reduce(field_, eg.s);
    }
    friend CubicFieldElement operator/(const CubicFieldElement& a, const CubicFieldElement& b) {
        return a * b.inverse();
    }

private:
    static std::shared_ptr<const NumberField> pick(const CubicFieldElement& a, const CubicFieldElement& b) {
        if (a.field_ && b.field_ && a.field_ != b.field_ && a.field_->modulus() != b.field_->modulus())
            throw DomainError("CubicFieldElement: operands live in different fields");
        return a.field_ ? a.field_ : b.field_;
    }
    static CubicFieldElement reduce(const std::shared_ptr<const NumberField>& field, const UPoly& p) {
        if (!field) throw DomainError("CubicFieldElement: no field context");
        const UPoly r = divmod(p, field->modulus()).second;
        CubicFieldElement e;
        e.field_ = field;
        e.c_ = {r.coeff(0), r.coeff(1), r.coeff(2)};
        return e;
    }

    std::shared_ptr<const NumberField> field_;
    std::array<Rational, 3> c_{};
};

namespace detail {

// Exact range of c0 + c1 x + c2 x^2 over the closed interval [lo, hi].
inline std::pair<Rational, Rational> quadratic_range(const std::array<Rational, 3>& c, const Rational& lo,
                                                     const Rational& hi) {
    const Rational sq_lo = (lo <= 0 && hi >= 0) ? Rational(0) : std::min(lo * lo, hi * hi);
    const Rational sq_hi = std::max(lo * lo, hi * hi);
    auto scaled = [](const Rational& k, const Rational& a, const Rational& b) {
        return k >= 0 ? std::pair{k * a, k * b} : std::pair{k * b, k * a};
    };
    const auto [l1, h1] = scaled(c[1], lo, hi);
    const auto [l2, h2] = scaled(c[2], sq_lo, sq_hi);
    return {c[0] + l1 + l2, c[0] + h1 + h2};
}

}  // namespace detail

// Sign of the element at the real embedding of mu. Zero is decided exactly by
// whether gcd(element, minimal polynomial) vanishes at mu; otherwise the interval
// is bisected until the element's range excludes zero.
inline int field_sign(const CubicFieldElement& e) {
    if (e.is_zero()) return 0;
    const NumberField& field = *e.field();
    const UPoly g = gcd(e.as_poly(), field.modulus());
    if (g.degree() >= 1) {
        const SturmChain sturm(g);
        const auto& iv = field.interval();
        if (sturm.count(iv.lo, iv.hi) > 0) return 0;
    }
    RealRoot root = field.root();
    while (true) {
        const auto [lo, hi] = detail::quadratic_range(e.coeffs(), root.interval().lo, root.interval().hi);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        root.bisect();
    }
}

// High-precision value of mu, refined until the interval is narrower than 2^-230.
inline Float200 to_float200(const NumberField& field) {
    RealRoot root = field.root();
    root.refine_to(Rational(1) / (BigInt(1) << 230));
    const Rational m = root.interval().midpoint();
    return Float200(boost::multiprecision::numerator(m)) / Float200(boost::multiprecision::denominator(m));
}

inline Float200 to_float200(const CubicFieldElement& e) {
    const Float200 mu = to_float200(*e.field());
    auto f = [](const Rational& q) {
        return Float200(boost::multiprecision::numerator(q)) / Float200(boost::multiprecision::denominator(q));
    };
    return f(e.coeffs()[0]) + mu * (f(e.coeffs()[1]) + mu * f(e.coeffs()[2]));
}

inline double to_double(const CubicFieldElement& e) { return static_cast<double>(to_float200(e)); }

inline std::string to_string(const CubicFieldElement& e, const std::string& var = "mu") {
    return to_string(e.as_poly(), var);
}

}  // namespace modlab
