#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace dalg {

/// Dense matrix over an exact field; F needs +,-,*,/ and the free
/// functions is_zero / zero_like / one_like.
template <class F>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const F& fill) : rows(r), cols(c), a(r * c, fill) {}

    F& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form; returns the pivot column of each
/// pivot row in order.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && is_zero(m.at(p, c))) ++p;
        if (p == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        F inv = one_like(m.at(r, c)) / m.at(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            F f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of the right nullspace, one vector per free column, in column order.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m, const F& sample) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<F> v(m.cols, zero_like(sample));
        v[free_c] = one_like(sample);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = zero_like(sample) - m.at(r, free_c);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b (free variables zero), or nullopt.
template <class F>
std::optional<std::vector<F>> solve_linear(const Matrix<F>& A, const std::vector<F>& b,
                                           const F& sample) {
    if (A.rows != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
    Matrix<F> m(A.rows, A.cols + 1, zero_like(sample));
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        m.at(i, A.cols) = b[i];
    }
    auto pivots = rref(m);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == A.cols) return std::nullopt;  // inconsistent row
    std::vector<F> x(A.cols, zero_like(sample));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m.at(r, A.cols);
    return x;
}

}  // namespace dalg
