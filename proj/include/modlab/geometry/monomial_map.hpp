#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "modlab/lattice/int_matrix.hpp"

namespace modlab {

// z_i = prod_j w_j^{M_ij}. Entries are non-negative.
class MonomialMap {
public:
    explicit MonomialMap(IntMatrix m) : m_(std::move(m)) {
        if (!m_.nonnegative()) throw DomainError("MonomialMap: negative matrix entry in " + to_string(m_));
        const BigInt d = determinant(m_);
        unimodular_ = d == 1 || d == -1;
    }

    static MonomialMap identity(std::size_t n) { return MonomialMap(IntMatrix::identity(n)); }

    const IntMatrix& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return m_.size(); }
    bool unimodular() const noexcept { return unimodular_; }

    friend bool operator==(const MonomialMap& a, const MonomialMap& b) { return a.m_ == b.m_; }

private:
    IntMatrix m_;
    bool unimodular_ = false;
};

// Coordinate charts of the three successive blow-ups and their composition.
inline MonomialMap chart(std::string_view name) {
    if (name == "pi0") return MonomialMap(IntMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});  // z2 = u2 u3
    if (name == "pi1") return MonomialMap(IntMatrix{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}});  // u3 = v1 v3
    if (name == "pi2") return MonomialMap(IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});  // v1 = w1 w2
    if (name == "pi") return MonomialMap(IntMatrix{{1, 1, 0}, {1, 2, 1}, {1, 1, 1}});
    if (name == "phi") return MonomialMap::identity(3);
    throw DomainError("chart: unknown chart '" + std::string(name) + "' (known: pi0, pi1, pi2, pi, phi)");
}

inline const std::vector<std::string>& chart_names() {
    static const std::vector<std::string> names{"pi0", "pi1", "pi2", "pi", "phi"};
    return names;
}

// If z = u^{M0} and u = v^{M1} then z = v^{M0 M1}: the list composes left to right.
inline MonomialMap compose_maps(const std::vector<MonomialMap>& maps) {
    if (maps.empty()) throw DimensionError("compose_maps: empty list");
    IntMatrix acc = maps.front().matrix();
    for (std::size_t k = 1; k < maps.size(); ++k) {
        if (maps[k].size() != acc.size()) throw DimensionError("compose_maps: dimension mismatch");
        acc = mat_mul(acc, maps[k].matrix());
    }
    return MonomialMap(std::move(acc));
}

inline MonomialMap map_power(const MonomialMap& m, unsigned long long k) {
    return MonomialMap(mat_pow(m.matrix(), k));
}

}  // namespace modlab
