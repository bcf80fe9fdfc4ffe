#pragma once

#include "modlab/geometry/monomial_map.hpp"
#include "modlab/poly/sparse_poly.hpp"

namespace modlab {

// Image of an exponent under z = w^M: z^a = w^{M^T a}.
inline Exponent transform_exponent(const Exponent& a, const IntMatrix& m) {
    if (a.size() != m.size())
        throw DimensionError("transform_exponent: exponent length " + std::to_string(a.size()) + " vs map size " +
                             std::to_string(m.size()));
    std::vector<BigInt> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < a.size(); ++j) r[j] += m(i, j) * a[i];
    }
    return Exponent(std::move(r));
}

// p o m. Exponents that collide under a singular map have their coefficients summed.
inline SparsePoly substitute_monomial(const SparsePoly& p, const MonomialMap& m) {
    if (p.nvars() != m.size())
        throw DimensionError("substitute_monomial: polynomial in " + std::to_string(p.nvars()) +
                             " variables, map of size " + std::to_string(m.size()));
    SparsePoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(transform_exponent(e, m.matrix()), c);
    return r;
}

inline SparsePoly substitute_monomial(const SparsePoly& p, const IntMatrix& m) {
    return substitute_monomial(p, MonomialMap(m));
}

}  // namespace modlab
