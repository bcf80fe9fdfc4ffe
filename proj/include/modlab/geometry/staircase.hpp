#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "modlab/poly/sparse_poly.hpp"
#include "modlab/poly/substitute.hpp"

namespace modlab {

using ExponentSet = std::set<Exponent>;

// {M^T a : a in s}.
inline ExponentSet support_image(const ExponentSet& s, const MonomialMap& m) {
    ExponentSet out;
    for (const auto& a : s) out.insert(transform_exponent(a, m.matrix()));
    return out;
}

// Coordinatewise-minimal points of s, in descending graded-lex order.
inline std::vector<Exponent> minimal_elements(const ExponentSet& s) {
    if (s.empty()) throw DomainError("minimal_elements: empty support");
    std::vector<Exponent> pts(s.begin(), s.end());
    // Anything strictly below p has smaller total degree, so it is seen first.
    std::stable_sort(pts.begin(), pts.end(),
                     [](const Exponent& a, const Exponent& b) { return a.degree() < b.degree(); });
    std::vector<Exponent> minimals;
    for (const auto& p : pts) {
        const bool dominated =
            std::any_of(minimals.begin(), minimals.end(), [&](const Exponent& m) { return m.divides(p); });
        if (!dominated) minimals.push_back(p);
    }
    std::sort(minimals.begin(), minimals.end(), GrlexDescending{});
    return minimals;
}

// Staircase of the Newton polyhedron conv(support) + positive octant.
struct NewtonStaircase {
    ExponentSet support;
    std::vector<Exponent> minimals;

    static NewtonStaircase of(const SparsePoly& p) {
        if (p.is_zero()) throw DomainError("NewtonStaircase: zero polynomial");
        ExponentSet s;
        for (const auto& [e, c] : p.terms()) s.insert(e);
        auto mins = minimal_elements(s);
        return {std::move(s), std::move(mins)};
    }

    bool principal() const { return minimals.size() == 1; }
};

namespace detail {

// Solves sum_i lambda_i t_i = p, sum_i lambda_i = 1 exactly. Returns false when the
// columns are affinely dependent or the system is inconsistent; otherwise true iff
// every lambda_i >= 0.
inline bool in_simplex(const Exponent& p, const std::vector<const Exponent*>& t) {
    const std::size_t rows = p.size() + 1, cols = t.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < p.size(); ++i) a[i][j] = Rational((*t[j])[i]);
        a[p.size()][j] = 1;
    }
    for (std::size_t i = 0; i < p.size(); ++i) a[i][cols] = Rational(p[i]);
    a[p.size()][cols] = 1;

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) return false;  // affinely dependent subset; a smaller one covers it
        std::swap(a[r], a[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return false;
    for (std::size_t i = 0; i < cols; ++i)
        if (a[i][cols] / a[i][i] < 0) return false;
    return true;
}

inline bool in_hull_of(const Exponent& p, const std::vector<Exponent>& pts, std::size_t skip) {
    const std::size_t max_k = std::min(p.size() + 1, pts.size() - 1);
    std::vector<const Exponent*> chosen;
    // Caratheodory: p is in the hull iff it is in the hull of some affinely
    // independent subset of at most dim+1 points.
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (!chosen.empty() && in_simplex(p, chosen)) return true;
        if (chosen.size() == max_k) return false;
        for (std::size_t i = start; i < pts.size(); ++i) {
            if (i == skip) continue;
            chosen.push_back(&pts[i]);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

// Indices of the points that are vertices of their convex hull. Exact; cost grows
// like |pts|^(dim+2), intended for supports of a few dozen points.
inline std::vector<std::size_t> hull_vertex_indices(const std::vector<Exponent>& pts) {
    std::vector<std::size_t> out;
    if (pts.size() <= 2) {
        for (std::size_t i = 0; i < pts.size(); ++i) out.push_back(i);
        return out;
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!detail::in_hull_of(pts[i], pts, i)) out.push_back(i);
    return out;
}

}  // namespace modlab
