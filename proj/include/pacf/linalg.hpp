#pragma once

// Exact Gaussian elimination over any field type T providing is_zero(),
// +, -, *, / and inverse(). Used over base-field scalars and over function
// fields of irreducible varieties.

#include <cstddef>
#include <optional>
#include <vector>

namespace pacf::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const T inv = m[row][col].inverse();
        for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const T f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return rref(m).size();
}

/// One solution of A x = b, or nullopt when inconsistent. `zero` supplies the
/// additive identity for free variables.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b, const T& zero) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    Matrix<T> aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<T> x(cols, zero);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

/// Basis of { x : A x = 0 }.
template <class T>
Matrix<T> nullspace(const Matrix<T>& a, std::size_t cols, const T& zero, const T& one) {
    Matrix<T> m = a;
    auto piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    Matrix<T> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, zero);
        v[free] = one;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = zero - m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace pacf::linalg
