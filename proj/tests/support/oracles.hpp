#pragma once

// Reference computations written independently of the library algorithms, used
// to cross-check them in the unit and acceptance suites.

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "modlab/geometry/monomial_map.hpp"
#include "modlab/lelong/projective_map.hpp"
#include "modlab/poly/sparse_poly.hpp"

namespace oracle {

using modlab::BigInt;
using modlab::Exponent;
using modlab::IntMatrix;
using modlab::Rational;
using modlab::SparsePoly;

// Leibniz expansion over all permutations.
inline BigInt leibniz_det(const std::vector<std::vector<BigInt>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BigInt total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        BigInt prod = 1;
        for (std::size_t i = 0; i < n; ++i) prod *= a[i][perm[i]];
        total += inversions % 2 ? -prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline std::vector<std::vector<BigInt>> rows_of(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> r(m.size(), std::vector<BigInt>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = m(i, j);
    return r;
}

inline BigInt det(const IntMatrix& m) { return leibniz_det(rows_of(m)); }

// Coefficients (leading first) of det(xI - M) for 3x3 M, by evaluating at
// x = 0..3 with the Leibniz formula and solving the Vandermonde system.
inline std::array<Rational, 4> charpoly3(const IntMatrix& m) {
    std::array<Rational, 4> y;
    for (int x = 0; x < 4; ++x) {
        auto r = rows_of(m);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) r[i][j] = (i == j ? BigInt(x) : BigInt(0)) - r[i][j];
        y[static_cast<std::size_t>(x)] = Rational(leibniz_det(r));
    }
    // Newton forward differences on x = 0, 1, 2, 3.
    const Rational d1 = y[1] - y[0], d2 = y[2] - 2 * y[1] + y[0], d3 = y[3] - 3 * y[2] + 3 * y[1] - y[0];
    // p(x) = y0 + d1 x + d2 x(x-1)/2 + d3 x(x-1)(x-2)/6
    const Rational c3 = d3 / 6;
    const Rational c2 = d2 / 2 - d3 / 2;
    const Rational c1 = d1 - d2 / 2 + d3 / 3;
    return {c3, c2, c1, y[0]};
}

// p o M by substituting z_i -> prod_j w_j^{M_ij} with plain ring arithmetic.
inline SparsePoly substitute_by_expansion(const SparsePoly& p, const IntMatrix& m) {
    const std::size_t n = p.nvars();
    std::vector<SparsePoly> images;
    for (std::size_t i = 0; i < n; ++i) {
        SparsePoly img = SparsePoly::constant(p.vars(), 1);
        for (std::size_t j = 0; j < n; ++j) img = img * modlab::poly_pow(SparsePoly::variable(p.vars(), j), m(i, j));
        images.push_back(img);
    }
    SparsePoly out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        SparsePoly t = SparsePoly::constant(p.vars(), c);
        for (std::size_t i = 0; i < n; ++i) t = t * modlab::poly_pow(images[i], e[i]);
        out = out + t;
    }
    return out;
}

// Term-by-term convolution on a plain map, bypassing SparsePoly arithmetic.
inline std::map<std::vector<long>, Rational> convolve(const SparsePoly& p, const SparsePoly& q) {
    std::map<std::vector<long>, Rational> out;
    for (const auto& [ea, ca] : p.terms())
        for (const auto& [eb, cb] : q.terms()) {
            std::vector<long> e;
            for (std::size_t k = 0; k < ea.size(); ++k) e.push_back(static_cast<long>(ea[k] + eb[k]));
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline std::map<std::vector<long>, Rational> as_map(const SparsePoly& p) {
    std::map<std::vector<long>, Rational> out;
    for (const auto& [e, c] : p.terms()) {
        std::vector<long> v;
        for (const auto& x : e.values()) v.push_back(static_cast<long>(x));
        out[v] = c;
    }
    return out;
}

// Quadratic scan: a point is minimal iff no other point lies coordinatewise below it.
inline std::vector<Exponent> minimal_elements_quadratic(const std::vector<Exponent>& pts) {
    std::vector<Exponent> out;
    for (const auto& a : pts) {
        bool dominated = false;
        for (const auto& b : pts) {
            if (b == a) continue;
            bool below = true;
            for (std::size_t k = 0; k < a.size(); ++k) below = below && b[k] <= a[k];
            dominated = dominated || below;
        }
        if (!dominated && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- random inputs ----

inline Rational random_rational(std::mt19937_64& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    int n = 0;
    while (n == 0) n = num(rng);
    return Rational(n, den(rng));
}

inline SparsePoly random_poly(std::mt19937_64& rng, std::size_t max_terms, int max_exp, std::size_t nvars = 3) {
    std::uniform_int_distribution<std::size_t> count(1, max_terms);
    std::uniform_int_distribution<int> ex(0, max_exp);
    SparsePoly p(modlab::default_vars(nvars));
    const std::size_t k = count(rng);
    while (p.size() < k) {
        std::vector<BigInt> e;
        for (std::size_t j = 0; j < nvars; ++j) e.emplace_back(ex(rng));
        p.add_term(Exponent(std::move(e)), random_rational(rng));
    }
    return p;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, int max_entry = 3, std::size_t n = 3) {
    std::uniform_int_distribution<int> d(0, max_entry);
    std::vector<std::vector<BigInt>> rows(n, std::vector<BigInt>(n));
    for (auto& r : rows)
        for (auto& v : r) v = d(rng);
    return IntMatrix::from_rows(rows);
}

// ---- pullback oracle ----

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

// dbar_k log G evaluated term by term from F_i = c z^a: dbar_k |F_i|^2 = F_i conj(dF_i/dz_k).
inline CVec3 dbar_log_g(const modlab::ProjectiveMonomialMap& f, const CVec3& z) {
    double g = 0;
    CVec3 acc{};
    for (const auto& comp : f.components()) {
        const Complex c(static_cast<double>(comp.coefficient.re), static_cast<double>(comp.coefficient.im));
        Complex val = c;
        for (std::size_t k = 0; k < 3; ++k) val *= std::pow(z[k], static_cast<double>(comp.exponent[k]));
        g += std::norm(val);
        for (std::size_t k = 0; k < 3; ++k) {
            const double a = static_cast<double>(comp.exponent[k]);
            if (a == 0) continue;
            Complex d = c * a * std::pow(z[k], a - 1);
            for (std::size_t j = 0; j < 3; ++j)
                if (j != k) d *= std::pow(z[j], static_cast<double>(comp.exponent[j]));
            acc[k] += val * std::conj(d);
        }
    }
    for (auto& v : acc) v /= g;
    return acc;
}

// H_jk = d/dz_j (dbar_k log G) by central differences of the Wirtinger derivative
// d/dz = (d/dx - i d/dy) / 2.
inline std::array<Complex, 9> pullback_by_differences(const modlab::ProjectiveMonomialMap& f, const CVec3& z,
                                                      double h = 1e-5) {
    std::array<Complex, 9> out{};
    for (std::size_t j = 0; j < 3; ++j) {
        CVec3 xp = z, xm = z, yp = z, ym = z;
        xp[j] += h;
        xm[j] -= h;
        yp[j] += Complex(0, h);
        ym[j] -= Complex(0, h);
        const auto fxp = dbar_log_g(f, xp), fxm = dbar_log_g(f, xm), fyp = dbar_log_g(f, yp), fym = dbar_log_g(f, ym);
        for (std::size_t k = 0; k < 3; ++k) {
            const Complex dx = (fxp[k] - fxm[k]) / (2 * h);
            const Complex dy = (fyp[k] - fym[k]) / (2 * h);
            out[3 * j + k] = (dx - Complex(0, 1) * dy) / 2.0;
        }
    }
    return out;
}

inline CVec3 random_point(std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
}

}  // namespace oracle
