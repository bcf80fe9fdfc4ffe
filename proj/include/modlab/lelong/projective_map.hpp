#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "modlab/poly/sparse_poly.hpp"

namespace modlab {

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

struct ExactComplex {
    Rational re;
    Rational im;
};

// One homogeneous coordinate c * z^a of f = [F_0 : ... : F_m].
struct MonomialComponent {
    ExactComplex coefficient;
    Exponent exponent;
};

// Sample lands where every component vanishes (indeterminacy or base locus).
class DegenerateSample : public DomainError {
public:
    using DomainError::DomainError;
};

// f(z) = [F_0(z) : ... : F_m(z)] on C^3 with monomial components. The pulled-back
// Fubini-Study form has local potential log sum |F_i|^2.
class ProjectiveMonomialMap {
public:
    explicit ProjectiveMonomialMap(std::vector<MonomialComponent> components) : components_(std::move(components)) {
        if (components_.size() < 2) throw DomainError("ProjectiveMonomialMap: needs at least two components");
        bool any_nonzero = false;
        for (const auto& c : components_) {
            if (c.exponent.size() != 3) throw DimensionError("ProjectiveMonomialMap: exponents must have length 3");
            Term t;
            t.coeff = {static_cast<double>(c.coefficient.re), static_cast<double>(c.coefficient.im)};
            for (std::size_t k = 0; k < 3; ++k) {
                if (c.exponent[k] > 1'000'000) throw DomainError("ProjectiveMonomialMap: exponent too large");
                t.exp[k] = static_cast<unsigned>(c.exponent[k]);
            }
            any_nonzero = any_nonzero || c.coefficient.re != 0 || c.coefficient.im != 0;
            terms_.push_back(t);
        }
        if (!any_nonzero) throw DomainError("ProjectiveMonomialMap: all components vanish identically");
    }

    // Components from polynomials with at most one term each (zero allowed).
    static ProjectiveMonomialMap from_polys(const std::vector<SparsePoly>& polys) {
        std::vector<MonomialComponent> comps;
        for (const auto& p : polys) {
            if (p.nvars() != 3) throw DimensionError("ProjectiveMonomialMap: components must be in three variables");
            if (p.size() > 1) throw DomainError("ProjectiveMonomialMap: component " + to_string(p) + " is not a monomial");
            if (p.is_zero()) comps.push_back({{Rational(0), Rational(0)}, Exponent(3)});
            else comps.push_back({{p.terms().begin()->second, Rational(0)}, p.terms().begin()->first});
        }
        return ProjectiveMonomialMap(std::move(comps));
    }

    const std::vector<MonomialComponent>& components() const noexcept { return components_; }

    struct Jet {
        double g = 0;  // sum |F_i|^2
        CVec3 dg{};    // dG/dz_j = sum_i dF_i/dz_j conj(F_i)
        std::array<Complex, 9> ddg{};  // d^2 G / dz_j dzbar_k, row-major
    };

    // G and its first and mixed second derivatives from closed-form monomial derivatives.
    Jet jet(const CVec3& z) const {
        Jet out;
        for (const auto& t : terms_) {
            if (t.coeff == Complex(0.0)) continue;
            Complex pw[3][2];  // z_k^{a_k} and z_k^{a_k - 1}
            for (std::size_t k = 0; k < 3; ++k) {
                pw[k][1] = t.exp[k] == 0 ? Complex(0.0) : ipow(z[k], t.exp[k] - 1);
                pw[k][0] = t.exp[k] == 0 ? Complex(1.0) : pw[k][1] * z[k];
            }
            const Complex f = t.coeff * pw[0][0] * pw[1][0] * pw[2][0];
            CVec3 df;
            for (std::size_t j = 0; j < 3; ++j) {
                Complex d = t.coeff * static_cast<double>(t.exp[j]);
                for (std::size_t k = 0; k < 3; ++k) d *= k == j ? pw[k][1] : pw[k][0];
                df[j] = d;
            }
            out.g += std::norm(f);
            for (std::size_t j = 0; j < 3; ++j) {
                out.dg[j] += df[j] * std::conj(f);
                for (std::size_t k = 0; k < 3; ++k) out.ddg[3 * j + k] += df[j] * std::conj(df[k]);
            }
        }
        return out;
    }

private:
    struct Term {
        Complex coeff;
        std::array<unsigned, 3> exp{};
    };

    static Complex ipow(Complex base, unsigned e) {
        Complex r(1.0);
        while (e) {
            if (e & 1u) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    std::vector<MonomialComponent> components_;
    std::vector<Term> terms_;
};

// Coefficient matrix H_jk of f*omega = (i/2pi) sum H_jk dz_j ^ dzbar_k at z.
struct HermitianForm3 {
    std::array<Complex, 9> h{};
    CVec3 z{};

    const Complex& operator()(std::size_t j, std::size_t k) const { return h[3 * j + k]; }
    Complex& operator()(std::size_t j, std::size_t k) { return h[3 * j + k]; }

    static HermitianForm3 identity() {
        HermitianForm3 f;
        for (std::size_t k = 0; k < 3; ++k) f(k, k) = 1.0;
        return f;
    }
};

// H = (ddbar G)/G - (dG)(dG)^H / G^2, the complex Hessian of log G. Only the upper
// triangle is computed; the lower one is its conjugate, so H is exactly Hermitian.
inline HermitianForm3 fs_pullback(const ProjectiveMonomialMap& f, const CVec3& z) {
    const auto jet = f.jet(z);
    if (!(jet.g > 0)) throw DegenerateSample("fs_pullback: all components vanish at the sample point");
    HermitianForm3 out;
    out.z = z;
    const double g2 = jet.g * jet.g;
    for (std::size_t j = 0; j < 3; ++j) {
        out(j, j) = Complex((jet.ddg[4 * j].real()) / jet.g - std::norm(jet.dg[j]) / g2, 0.0);
        for (std::size_t k = j + 1; k < 3; ++k) {
            out(j, k) = jet.ddg[3 * j + k] / jet.g - jet.dg[j] * std::conj(jet.dg[k]) / g2;
            out(k, j) = std::conj(out(j, k));
        }
    }
    return out;
}

// dbar_k log G = conj(dG/dz_k) / G.
inline CVec3 dbar_log_potential(const ProjectiveMonomialMap& f, const CVec3& z) {
    const auto jet = f.jet(z);
    if (!(jet.g > 0)) throw DegenerateSample("dbar_log_potential: all components vanish at the sample point");
    return {std::conj(jet.dg[0]) / jet.g, std::conj(jet.dg[1]) / jet.g, std::conj(jet.dg[2]) / jet.g};
}

// Elementary symmetric function of the eigenvalues: trace, sum of principal 2x2 minors, determinant.
inline double sigma_p(const HermitianForm3& h, int p) {
    switch (p) {
    case 0:
        return 1.0;
    case 1:
        return h(0, 0).real() + h(1, 1).real() + h(2, 2).real();
    case 2: {
        double s = 0;
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = j + 1; k < 3; ++k) s += h(j, j).real() * h(k, k).real() - std::norm(h(j, k));
        return s;
    }
    case 3: {
        const Complex d = h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                          h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                          h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
        return d.real();
    }
    default:
        throw DomainError("sigma_p: degree must be in 0..3, got " + std::to_string(p));
    }
}

// (f*omega)^p ^ beta^(n-p) = c(p, n) sigma_p(H) dV, where dV is normalized so that
// beta^n = n! dV. Expanding at diagonal H, each p-subset of the diagonal 2-forms is
// ordered in p! ways and the complementary beta factors in (n-p)! ways.
inline Rational wedge_coefficient(int p, int n = 3) {
    if (n < 0 || p < 0 || p > n) throw DomainError("wedge_coefficient: need 0 <= p <= n");
    BigInt c = 1;
    for (int k = 2; k <= p; ++k) c *= k;
    for (int k = 2; k <= n - p; ++k) c *= k;
    return Rational(c);
}

// Euclidean ball volume in C^n under the normalized measure dV (Lebesgue / pi^n).
inline double normalized_ball_volume(double r, int n = 3) {
    double v = 1;
    for (int k = 0; k < 2 * n; ++k) v *= r;
    for (int k = 2; k <= n; ++k) v /= k;
    return v;
}

}  // namespace modlab
