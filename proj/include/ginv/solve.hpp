#pragma once

#include <optional>

#include "ginv/matrix.hpp"

namespace ginv {

/// Solves A X = B by Gauss-Jordan elimination with partial pivoting.
/// Returns nullopt when A is singular: exactly singular on the exact
/// backend, pivot below rank_tol * max|A| on the float backend.
template <class T>
std::optional<Matrix<T>> solve_linear(const Matrix<T>& a, const Matrix<T>& b,
                                      const TolerancePolicy& pol = {}) {
    if (!a.is_square()) throw std::invalid_argument("solve_linear: square matrix required");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row counts disagree");
    const std::size_t n = a.rows();
    if (n == 0) return Matrix<T>(0, b.cols());

    Matrix<T> m = hstack(a, b);
    const double scale = a.max_abs();
    const std::size_t w = m.cols();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        auto best = scalar_traits<T>::magnitude(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            auto mag = scalar_traits<T>::magnitude(m(i, k));
            if (mag > best) { best = mag; piv = i; }
        }
        if (is_negligible(m(piv, k), scale, pol)) return std::nullopt;
        m.swap_rows(k, piv);

        const T inv_piv = T{1} / m(k, k);
        for (std::size_t j = k; j < w; ++j) m(k, j) = m(k, j) * inv_piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || scalar_traits<T>::is_zero(m(i, k))) continue;
            const T f = m(i, k);
            for (std::size_t j = k; j < w; ++j) m(i, j) = m(i, j) - f * m(k, j);
        }
    }
    return m.block(0, n, n, b.cols());
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    return solve_linear(a, Matrix<T>::identity(a.rows()), pol);
}

} // namespace ginv
