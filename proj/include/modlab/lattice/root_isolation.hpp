#pragma once

#include <string>

#include "modlab/lattice/upoly.hpp"

namespace modlab {

// Open interval (lo, hi) with exact rational endpoints.
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo < x && x < hi; }
    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

inline std::string to_string(const RationalInterval& iv) {
    return "(" + to_string(iv.lo) + ", " + to_string(iv.hi) + ")";
}

// A real algebraic number: the unique root of a squarefree polynomial inside an
// isolating interval whose endpoints are not roots.
class RealRoot {
public:
    RealRoot(UPoly squarefree, RationalInterval interval)
        : poly_(squarefree.monic()), interval_(std::move(interval)) {}

    const UPoly& poly() const noexcept { return poly_; }
    const RationalInterval& interval() const noexcept { return interval_; }

    // One bisection step; an exact hit on the root collapses the interval around it.
    void bisect() {
        const Rational m = interval_.midpoint();
        const int sm = poly_(m).sign();
        if (sm == 0) {
            const Rational q = interval_.width() / 4;
            interval_ = {m - q, m + q};
        } else if (sm == poly_(interval_.lo).sign()) {
            interval_.lo = m;
        } else {
            interval_.hi = m;
        }
    }

    RealRoot& refine_to(const Rational& width) {
        while (interval_.width() > width) bisect();
        return *this;
    }

    // Exact comparison with a rational; terminates because the root is isolated.
    int compare(const Rational& x) {
        if (poly_(x) == 0 && interval_.contains(x)) return 0;
        while (interval_.contains(x)) bisect();
        if (poly_(x) == 0 && interval_.contains(x)) return 0;
        return x <= interval_.lo ? 1 : -1;
    }

private:
    UPoly poly_;
    RationalInterval interval_;
};

namespace detail {

// Isolates the largest real root of q (squarefree) to an interval of width <= max_width.
inline RationalInterval isolate_largest_root(const UPoly& q, const SturmChain& sturm, const BigInt& bound,
                                             const Rational& max_width) {
    const Rational top(bound);
    BigInt k = bound - 1;
    while (sturm.count(Rational(k), top) == 0) {
        if (k < -bound) throw DomainError("isolate_dominant_root: no real root bracketed in scan range");
        --k;
    }
    Rational lo(k), hi(k + 1);
    while (true) {
        if (q(hi) == 0) {
            hi += (hi - lo) / 2;
            continue;
        }
        if (q(lo) != 0 && sturm.count(lo, hi) == 1 && hi - lo <= max_width) break;
        const Rational m = (lo + hi) / 2;
        if (sturm.count(m, hi) >= 1) lo = m;
        else hi = m;
    }
    return {lo, hi};
}

}  // namespace detail

// Isolates the real root of p that exceeds the absolute value of every other
// real root. The integer scan starts at the Cauchy bound and the bracket is then
// bisected down to max_width. The returned endpoints always give p opposite signs.
inline RationalInterval isolate_dominant_root(const UPoly& p, const Rational& max_width = Rational(1, 4)) {
    if (p.degree() < 1) throw DomainError("isolate_dominant_root: polynomial has no roots");
    const UPoly q = squarefree_part(p);
    const SturmChain sturm(q);
    const BigInt bound = cauchy_bound(p);
    RationalInterval iv = detail::isolate_largest_root(q, sturm, bound, max_width);
    if ((p(iv.lo) * p(iv.hi)).sign() >= 0)
        throw DomainError("isolate_dominant_root: largest real root has even multiplicity (no sign change)");

    RealRoot root(q, iv);
    for (int guard = 0; sturm.count_below(-root.interval().lo) > 0; ++guard) {
        if (sturm.count_below(-root.interval().hi) > 0 || guard > 512)
            throw DomainError("isolate_dominant_root: a negative real root is at least as large in modulus");
        root.bisect();
    }
    return root.interval();
}

inline RationalInterval isolate_dominant_root(const MonicCubic& p, const Rational& max_width = Rational(1, 4)) {
    return isolate_dominant_root(UPoly::from_cubic(p), max_width);
}

}  // namespace modlab
