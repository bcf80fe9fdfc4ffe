#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modlab/lattice/int_matrix.hpp"
#include "modlab/lattice/number_field.hpp"

namespace modlab {

using FieldVector = std::array<CubicFieldElement, 3>;

struct Eigenvectors {
    FieldVector right;  // (M - mu I) v = 0, first coordinate 1
    FieldVector left;   // w^T (M - mu I) = 0, last coordinate 1
};

namespace detail {

inline FieldVector cross(const FieldVector& a, const FieldVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const FieldVector& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

using FieldMatrix = std::array<FieldVector, 3>;

inline FieldMatrix shifted(const IntMatrix& m, const std::shared_ptr<const NumberField>& field) {
    const auto mu = CubicFieldElement::generator(field);
    FieldMatrix b;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            b[i][j] = CubicFieldElement::constant(field, Rational(m(i, j)));
            if (i == j) b[i][j] = b[i][j] - mu;
        }
    return b;
}

inline FieldMatrix transpose(const FieldMatrix& b) {
    FieldMatrix t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t[j][i] = b[i][j];
    return t;
}

inline FieldVector mat_apply(const FieldMatrix& b, const FieldVector& v) {
    FieldVector r;
    for (std::size_t i = 0; i < 3; ++i) r[i] = b[i][0] * v[0] + b[i][1] * v[1] + b[i][2] * v[2];
    return r;
}

// Kernel vector of a 3x3 matrix over the field, normalized so that coordinate
// `pivot` equals 1 (falling back to the first nonzero coordinate).
inline FieldVector kernel_vector(const FieldMatrix& b, std::size_t pivot) {
    bool all_zero = true;
    for (const auto& row : b) all_zero = all_zero && is_zero(row);
    if (all_zero) throw DomainError("eigenvectors: eigenspace dimension 3");
    FieldVector v;
    bool found = false;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        v = cross(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
        if (!is_zero(v)) {
            found = true;
            break;
        }
    }
    if (!found) throw DomainError("eigenvectors: eigenspace dimension 2");
    if (!is_zero(mat_apply(b, v))) throw DomainError("eigenvectors: eigenspace dimension 0 (mu is not an eigenvalue)");
    std::size_t k = pivot;
    if (v[k].is_zero()) {
        k = 0;
        while (v[k].is_zero()) ++k;
    }
    const CubicFieldElement inv = v[k].inverse();
    for (auto& c : v) c = c * inv;
    return v;
}

}  // namespace detail

// Exact null-space solutions of (M - mu I) v = 0 and w^T (M - mu I) = 0.
inline Eigenvectors eigenvectors(const IntMatrix& m, const std::shared_ptr<const NumberField>& field) {
    if (m.size() != 3) throw DimensionError("eigenvectors: expects a 3x3 matrix");
    const auto b = detail::shifted(m, field);
    return {detail::kernel_vector(b, 0), detail::kernel_vector(detail::transpose(b), 2)};
}

// Discriminant of x^3 + b x^2 + c x + d.
inline BigInt discriminant(const MonicCubic& p) {
    const BigInt &b = p[1], &c = p[2], &d = p[3];
    return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
}

// det of the 3x3 rational matrix whose rows are the {1, mu, mu^2} coordinates of
// the components. Nonzero iff the components are linearly independent over Q.
inline Rational independence_determinant(const FieldVector& v) {
    const auto& a = v[0].coeffs();
    const auto& b = v[1].coeffs();
    const auto& c = v[2].coeffs();
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Properties 3-5 for one of the two actions (M on column vectors, or M^T).
struct ActionCertificate {
    std::string action;            // "M" or "M^T"
    FieldVector dominant;          // eigenvector of mu for this action
    FieldVector plane_normal;      // invariant plane = orthogonal complement of this vector
    bool dominant_positive = false;       // every coordinate > 0
    bool plane_avoids_octant = false;     // normal strictly one-signed
    bool plane_has_no_lattice_points = false;
    Rational independence_det;

    bool passes() const { return dominant_positive && plane_avoids_octant && plane_has_no_lattice_points; }
};

struct SpectralCertificate {
    IntMatrix matrix;
    BigInt det;
    MonicCubic charpoly;
    BigInt discriminant;
    RationalInterval mu_interval;
    UPoly minimal_poly;
    bool irreducible = false;
    std::shared_ptr<const NumberField> field;
    Eigenvectors eig;
    bool residual_zero = false;

    bool mu_greater_than_3 = false;            // property 1
    bool modulus_sq_lambda_reciprocal = false; // property 2: |lambda|^2 = 1/mu < 1/3
    std::string lambda_statement;
    ActionCertificate direct;                  // properties 3-5 for M
    ActionCertificate transposed;              // properties 3-5 for M^T

    Rational independence_det() const { return direct.independence_det; }

    std::array<bool, 5> flags() const {
        return {mu_greater_than_3, modulus_sq_lambda_reciprocal, direct.dominant_positive,
                direct.plane_avoids_octant, direct.plane_has_no_lattice_points};
    }

    bool all_pass() const {
        return residual_zero && mu_greater_than_3 && modulus_sq_lambda_reciprocal && direct.passes() &&
               transposed.passes();
    }
};

namespace detail {

inline bool all_sign(const FieldVector& v, int s) {
    for (const auto& c : v)
        if (field_sign(c) != s) return false;
    return true;
}

inline ActionCertificate certify_action(std::string name, const FieldVector& dominant, const FieldVector& normal) {
    ActionCertificate a;
    a.action = std::move(name);
    a.dominant = dominant;
    a.plane_normal = normal;
    a.dominant_positive = all_sign(dominant, 1);
    // <normal, x> != 0 for every nonzero x >= 0 when the normal is one-signed.
    a.plane_avoids_octant = all_sign(normal, 1) || all_sign(normal, -1);
    // An integer vector in the plane would be a rational relation among the normal's components.
    a.independence_det = independence_determinant(normal);
    a.plane_has_no_lattice_points = a.independence_det != 0;
    return a;
}

// Minimal polynomial of the root isolated by iv: strip rational roots of p.
inline UPoly minimal_polynomial(const UPoly& p, const RationalInterval& iv) {
    UPoly rest = p.monic();
    for (const auto& r : rational_roots(p)) {
        if (iv.contains(r)) return x_minus(r);
        while (rest.degree() >= 1 && rest(r) == 0) rest = divmod(rest, x_minus(r)).first;
    }
    return rest;
}

}  // namespace detail

// Certificate for the unimodular 3x3 matrix m: properties 1-5 for both the
// action of m and of its transpose.
inline SpectralCertificate certify_spectral(const IntMatrix& m) {
    if (m.size() != 3) throw DimensionError("certify_spectral: expects a 3x3 matrix");
    SpectralCertificate cert;
    cert.matrix = m;
    cert.det = determinant(m);
    if (abs(cert.det) != 1)
        throw DomainError("certify_spectral: matrix is not unimodular (det = " + cert.det.str() + ")");
    cert.charpoly = characteristic_polynomial(m);
    cert.discriminant = discriminant(cert.charpoly);
    const UPoly p = UPoly::from_cubic(cert.charpoly);
    cert.mu_interval = isolate_dominant_root(p);

    const UPoly repeated = gcd(p, p.derivative());
    if (repeated.degree() >= 1 && SturmChain(repeated).count(cert.mu_interval.lo, cert.mu_interval.hi) > 0)
        throw DomainError("certify_spectral: characteristic polynomial " + to_string(p) +
                          " is reducible over Q with a repeated dominant root");

    cert.minimal_poly = detail::minimal_polynomial(p, cert.mu_interval);
    cert.irreducible = cert.minimal_poly.degree() == 3;
    cert.field = std::make_shared<const NumberField>(cert.minimal_poly, cert.mu_interval);
    cert.eig = eigenvectors(m, cert.field);

    const auto b = detail::shifted(m, cert.field);
    cert.residual_zero = detail::is_zero(detail::mat_apply(b, cert.eig.right)) &&
                         detail::is_zero(detail::mat_apply(detail::transpose(b), cert.eig.left));

    const auto mu = CubicFieldElement::generator(cert.field);
    cert.mu_greater_than_3 = field_sign(mu - CubicFieldElement::constant(cert.field, 3)) > 0;
    // Product of the roots is det = 1; a complex pair exists iff the discriminant is negative.
    cert.modulus_sq_lambda_reciprocal = cert.det == 1 && cert.discriminant < 0 && cert.mu_greater_than_3;
    if (cert.det == 1 && cert.discriminant < 0)
        cert.lambda_statement = std::string("|lambda|^2 = det/mu = 1/mu") + (cert.mu_greater_than_3 ? " < 1/3" : "");
    else if (cert.discriminant >= 0)
        cert.lambda_statement = "no complex eigenvalue pair (discriminant >= 0)";
    else
        cert.lambda_statement = "|lambda|^2 = -1/mu is impossible for det = -1 with mu > 0";

    // For M the invariant plane is w-perp (w the left eigenvector); for M^T it is v-perp.
    cert.direct = detail::certify_action("M", cert.eig.right, cert.eig.left);
    cert.transposed = detail::certify_action("M^T", cert.eig.left, cert.eig.right);
    return cert;
}

}  // namespace modlab
