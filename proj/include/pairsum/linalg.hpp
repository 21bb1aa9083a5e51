#pragma once

#include "pairsum/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pairsum {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

class DimensionMismatchError : public std::invalid_argument {
  public:
    explicit DimensionMismatchError(const std::string& what)
        : std::invalid_argument(what) {}
};

inline Rational dot(const QVector& u, const QVector& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatchError("dot: vectors of different dimension");
    }
    Rational acc(0);
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

inline QVector add(const QVector& u, const QVector& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatchError("add: vectors of different dimension");
    }
    QVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
    return out;
}

inline QVector sub(const QVector& u, const QVector& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatchError("sub: vectors of different dimension");
    }
    QVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
    return out;
}

inline QVector scaled(const QVector& u, const Rational& t) {
    QVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = t * u[i];
    return out;
}

inline QVector negated(const QVector& u) { return scaled(u, Rational(-1)); }

inline bool is_zero_vector(const QVector& u) {
    for (const auto& c : u) {
        if (c != 0) return false;
    }
    return true;
}

inline QVector zero_vector(std::size_t d) { return QVector(d, Rational(0)); }

inline QVector unit_vector(std::size_t d, std::size_t index) {
    QVector e(d, Rational(0));
    e.at(index) = 1;
    return e;
}

/// Lexicographic order on coordinates; used for canonical sorting and sets.
inline bool lex_less(const QVector& u, const QVector& v) {
    const std::size_t n = u.size() < v.size() ? u.size() : v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] != v[i]) return u[i] < v[i];
    }
    return u.size() < v.size();
}

namespace detail {

inline void check_common_dimension(const std::vector<QVector>& vectors) {
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i].size() != vectors[0].size()) {
            throw DimensionMismatchError("vector list mixes dimensions");
        }
    }
}

/// In-place reduced row echelon form. Returns the pivot column indices.
inline std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        const Rational inv = Rational(1) / m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of {x : m x = 0} read off the reduced echelon form.
inline std::vector<QVector> nullspace(QMatrix m, std::size_t cols) {
    const std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVector x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            x[pivots[r]] = -m[r][free];
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace detail

/// Exact rank of the span of the given vectors.
inline std::size_t rank(const std::vector<QVector>& vectors) {
    if (vectors.empty()) return 0;
    detail::check_common_dimension(vectors);
    QMatrix m = vectors;
    return detail::rref(m).size();
}

/// Basis of the coefficient kernel {c : sum_i c_i v_i = 0}. Empty iff the
/// vectors are linearly independent.
inline std::vector<QVector> kernel_basis(const std::vector<QVector>& vectors) {
    if (vectors.empty()) {
        throw std::invalid_argument("kernel_basis: empty input");
    }
    detail::check_common_dimension(vectors);
    const std::size_t d = vectors[0].size();
    const std::size_t m = vectors.size();
    QMatrix a(d, QVector(m, Rational(0)));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < d; ++r) a[r][j] = vectors[j][r];
    }
    return detail::nullspace(std::move(a), m);
}

/// Rational basis of span(vectors)^perp inside dimension d, by unnormalized
/// Gram-Schmidt. Every returned vector has exact zero inner product with
/// every input.
inline std::vector<QVector> orthogonal_complement_basis(
    const std::vector<QVector>& vectors, std::size_t d) {
    for (const auto& v : vectors) {
        if (v.size() != d) {
            throw DimensionMismatchError("orthogonal_complement_basis: wrong dimension");
        }
    }
    // Orthogonalize the inputs first (dropping dependent ones), then sweep
    // the standard basis through the same process; survivors span the
    // complement. No normalization, so everything stays rational.
    std::vector<QVector> ortho;
    auto project_out = [&ortho](QVector v) {
        for (const auto& w : ortho) {
            const Rational coef = dot(v, w) / dot(w, w);
            if (coef != 0) v = sub(v, scaled(w, coef));
        }
        return v;
    };
    for (const auto& v : vectors) {
        QVector r = project_out(v);
        if (!is_zero_vector(r)) ortho.push_back(std::move(r));
    }
    const std::size_t span_rank = ortho.size();
    for (std::size_t k = 0; k < d; ++k) {
        QVector r = project_out(unit_vector(d, k));
        if (!is_zero_vector(r)) ortho.push_back(std::move(r));
    }
    return {ortho.begin() + static_cast<std::ptrdiff_t>(span_rank), ortho.end()};
}

} // namespace pairsum
