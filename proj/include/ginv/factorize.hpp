#pragma once

#include <vector>

#include "ginv/detail/eigen_bridge.hpp"
#include "ginv/matrix.hpp"
#include "ginv/solve.hpp"

namespace ginv {

/// Full-rank factorization a = f * g with f of full column rank and g of
/// full row rank. rank == 0 yields empty factors (n x 0 and 0 x m).
template <class T>
struct RankFactorization {
    Matrix<T> f;
    Matrix<T> g;
    std::size_t rank = 0;
};

namespace detail {

template <class T>
struct RrefResult {
    Matrix<T> r;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form under exact arithmetic; pivot selection by
/// largest magnitude for reproducibility, correctness needs none.
template <class T>
RrefResult<T> rref_exact(Matrix<T> m) {
    static_assert(scalar_traits<T>::is_exact);
    RrefResult<T> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    for (std::size_t j = 0; j < cols && lead < rows; ++j) {
        std::size_t piv = lead;
        auto best = scalar_traits<T>::magnitude(m(lead, j));
        for (std::size_t i = lead + 1; i < rows; ++i) {
            auto mag = scalar_traits<T>::magnitude(m(i, j));
            if (mag > best) { best = mag; piv = i; }
        }
        if (scalar_traits<T>::is_zero(m(piv, j))) continue;
        m.swap_rows(lead, piv);
        const T inv_piv = T{1} / m(lead, j);
        for (std::size_t c = j; c < cols; ++c) m(lead, c) = m(lead, c) * inv_piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || scalar_traits<T>::is_zero(m(i, j))) continue;
            const T f = m(i, j);
            for (std::size_t c = j; c < cols; ++c) m(i, c) = m(i, c) - f * m(lead, c);
        }
        out.pivot_cols.push_back(j);
        ++lead;
    }
    out.r = std::move(m);
    return out;
}

/// Numerical rank from the diagonal of a column-pivoted R factor, with an
/// optional guard that refuses decisions too close to the threshold.
inline std::size_t rank_from_diag(const std::vector<double>& diag, const TolerancePolicy& pol) {
    double scale = 0.0;
    for (double d : diag) scale = std::max(scale, d);
    if (scale == 0.0) return 0;
    std::size_t r = 0;
    for (double d : diag) {
        const double ratio = d / scale;
        if (pol.ambiguity_factor > 1.0 && ratio > pol.rank_tol / pol.ambiguity_factor &&
            ratio <= pol.rank_tol * pol.ambiguity_factor)
            throw NumericalError("rank decision within the ambiguity band of the threshold");
        if (ratio > pol.rank_tol) ++r;
    }
    return r;
}

} // namespace detail

template <class T>
RankFactorization<T> rank_factorize(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    RankFactorization<T> out;
    const std::size_t n = a.rows(), m = a.cols();

    if constexpr (scalar_traits<T>::is_exact) {
        auto rr = detail::rref_exact(a);
        const std::size_t r = rr.pivot_cols.size();
        Matrix<T> f(n, r), g(r, m);
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t i = 0; i < n; ++i) f(i, k) = a(i, rr.pivot_cols[k]);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < m; ++j) g(i, j) = rr.r(i, j);
        out.f = std::move(f);
        out.g = std::move(g);
        out.rank = r;
    } else {
        if (n == 0 || m == 0) {
            out.f = Matrix<T>(n, 0);
            out.g = Matrix<T>(0, m);
            return out;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(detail::to_eigen(a));
        const std::size_t k = std::min(n, m);
        std::vector<double> diag(k);
        for (std::size_t i = 0; i < k; ++i)
            diag[i] = std::abs(qr.matrixQR()(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(i)));
        const std::size_t r = detail::rank_from_diag(diag, pol);
        Eigen::MatrixXcd q = qr.householderQ();
        Eigen::MatrixXcd rmat = qr.matrixQR()
                                    .topRows(static_cast<Eigen::Index>(r))
                                    .template triangularView<Eigen::Upper>();
        Eigen::MatrixXcd g = rmat * qr.colsPermutation().inverse();
        out.f = detail::from_eigen(q.leftCols(static_cast<Eigen::Index>(r)));
        out.g = detail::from_eigen(g);
        out.rank = r;
    }
    return out;
}

template <class T>
std::size_t rank_of(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    if constexpr (scalar_traits<T>::is_exact) {
        return detail::rref_exact(a).pivot_cols.size();
    } else {
        if (a.rows() == 0 || a.cols() == 0) return 0;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(detail::to_eigen(a));
        const std::size_t k = std::min(a.rows(), a.cols());
        std::vector<double> diag(k);
        for (std::size_t i = 0; i < k; ++i)
            diag[i] = std::abs(qr.matrixQR()(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(i)));
        return detail::rank_from_diag(diag, pol);
    }
}

/// Basis (not canonicalized) of the kernel of a, as the columns of a
/// cols(a) x (cols(a) - rank) matrix of full column rank.
template <class T>
Matrix<T> kernel_basis_matrix(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    const std::size_t m = a.cols();
    if constexpr (scalar_traits<T>::is_exact) {
        auto rr = detail::rref_exact(a);
        const std::size_t r = rr.pivot_cols.size();
        std::vector<bool> is_pivot(m, false);
        for (auto j : rr.pivot_cols) is_pivot[j] = true;
        Matrix<T> kb(m, m - r);
        std::size_t col = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (is_pivot[j]) continue;
            kb(j, col) = T{1};
            for (std::size_t i = 0; i < r; ++i) kb(rr.pivot_cols[i], col) = -rr.r(i, j);
            ++col;
        }
        return kb;
    } else {
        if (m == 0) return Matrix<T>(0, 0);
        if (a.rows() == 0) return Matrix<T>::identity(m);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(detail::to_eigen(a));
        const std::size_t k = std::min(a.rows(), m);
        std::vector<double> diag(k);
        for (std::size_t i = 0; i < k; ++i)
            diag[i] = std::abs(qr.matrixQR()(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(i)));
        const std::size_t r = detail::rank_from_diag(diag, pol);
        const auto ri = static_cast<Eigen::Index>(r);
        const auto mi = static_cast<Eigen::Index>(m);
        Eigen::MatrixXcd kb = Eigen::MatrixXcd::Zero(mi, mi - ri);
        if (r < m) {
            Eigen::MatrixXcd rfull = qr.matrixQR().template triangularView<Eigen::Upper>();
            Eigen::MatrixXcd r11 = rfull.topLeftCorner(ri, ri);
            Eigen::MatrixXcd r12 = rfull.topRightCorner(ri, mi - ri);
            kb.topRows(ri) = -r11.template triangularView<Eigen::Upper>().solve(r12);
            kb.bottomRows(mi - ri).setIdentity();
            kb = qr.colsPermutation() * kb;
        }
        return detail::from_eigen(kb);
    }
}

/// Orthonormalizes the columns of a full-column-rank matrix (float backend),
/// with column phases fixed so the result is reproducible.
inline Matrix<Complex> orthonormal_columns(const Matrix<Complex>& basis) {
    const auto n = static_cast<Eigen::Index>(basis.rows());
    const auto k = static_cast<Eigen::Index>(basis.cols());
    if (k == 0) return basis;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(detail::to_eigen(basis));
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return detail::from_eigen(q);
}

} // namespace ginv
