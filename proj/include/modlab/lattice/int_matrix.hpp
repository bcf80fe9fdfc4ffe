#pragma once

#include <array>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "modlab/common.hpp"

namespace modlab {

// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), data_(n * n) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw DimensionError("IntMatrix: rows must form a square array");
            for (long long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows) {
        IntMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw DimensionError("IntMatrix: rows must form a square array");
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::vector<BigInt> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_)};
    }

    IntMatrix transpose() const {
        IntMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool nonnegative() const {
        for (const auto& v : data_)
            if (v < 0) return false;
        return true;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<BigInt> data_;
};

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.size() != b.size())
        throw DimensionError("mat_mul: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    const std::size_t n = a.size();
    IntMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mat_mul(a, b); }

inline IntMatrix mat_pow(const IntMatrix& m, unsigned long long k) {
    IntMatrix result = IntMatrix::identity(m.size());
    IntMatrix base = m;
    while (k > 0) {
        if (k & 1ULL) result = mat_mul(result, base);
        k >>= 1;
        if (k > 0) base = mat_mul(base, base);
    }
    return result;
}

// Fraction-free Gaussian elimination (Bareiss); exact for any size.
inline BigInt determinant(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sgn * a(n - 1, n - 1);
}

// Monic cubic x^3 + c[1] x^2 + c[2] x + c[3], stored leading coefficient first.
using MonicCubic = std::array<BigInt, 4>;

// det(xI - m) for a 3x3 matrix.
inline MonicCubic characteristic_polynomial(const IntMatrix& m) {
    if (m.size() != 3) throw DimensionError("characteristic_polynomial: expects a 3x3 matrix");
    const BigInt trace = m(0, 0) + m(1, 1) + m(2, 2);
    const BigInt minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                          m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    return {BigInt(1), -trace, minors, -determinant(m)};
}

inline std::string to_string(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.size(); ++j) s += (j ? "," : "") + m(i, j).str();
        s += "]";
    }
    return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << to_string(m); }

}  // namespace modlab
