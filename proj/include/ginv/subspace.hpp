#pragma once

#include <stdexcept>

#include "ginv/factorize.hpp"
#include "ginv/solve.hpp"

namespace ginv {

/// A linear subspace of ℚⁿ or ℂⁿ held through a canonical basis:
/// reduced column echelon form under the exact backend (bit-identical for
/// equal subspaces), orthonormal columns with fixed phases under float.
/// dim() == 0 encodes {0}.
template <class T>
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient) {
        return Subspace(ambient, Matrix<T>(ambient, 0));
    }

    static Subspace full(std::size_t ambient) {
        return Subspace(ambient, Matrix<T>::identity(ambient));
    }

    /// Canonical subspace spanned by the columns (dependent columns fine).
    static Subspace from_spanning(const Matrix<T>& span, const TolerancePolicy& pol = {}) {
        const std::size_t n = span.rows();
        if constexpr (scalar_traits<T>::is_exact) {
            auto rr = detail::rref_exact(span.transpose());
            const std::size_t r = rr.pivot_cols.size();
            Matrix<T> basis(n, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < n; ++j) basis(j, i) = rr.r(i, j);
            return Subspace(n, std::move(basis));
        } else {
            auto fact = rank_factorize(span, pol);
            return Subspace(n, orthonormal_columns(fact.f));
        }
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix<T>& basis() const { return basis_; }

private:
    Subspace(std::size_t ambient, Matrix<T> basis)
        : ambient_(ambient), basis_(std::move(basis)) {}

    std::size_t ambient_ = 0;
    Matrix<T> basis_{0, 0};
};

template <class T>
Subspace<T> range_basis(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    return Subspace<T>::from_spanning(a, pol);
}

template <class T>
Subspace<T> nullspace_basis(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    return Subspace<T>::from_spanning(kernel_basis_matrix(a, pol), pol);
}

namespace detail {
template <class T>
void require_same_ambient(const Subspace<T>& u, const Subspace<T>& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("subspaces live in different ambient dimensions");
}
} // namespace detail

template <class T>
bool subspace_contained(const Subspace<T>& u, const Subspace<T>& v,
                        const TolerancePolicy& pol = {}) {
    detail::require_same_ambient(u, v);
    if (u.dim() == 0) return true;
    if (u.dim() > v.dim()) return false;
    return rank_of(hstack(v.basis(), u.basis()), pol) == v.dim();
}

template <class T>
bool subspace_equal(const Subspace<T>& u, const Subspace<T>& v,
                    const TolerancePolicy& pol = {}) {
    detail::require_same_ambient(u, v);
    return u.dim() == v.dim() && subspace_contained(u, v, pol);
}

template <class T>
bool direct_sum_check(const Subspace<T>& u, const Subspace<T>& v,
                      const TolerancePolicy& pol = {}) {
    detail::require_same_ambient(u, v);
    const std::size_t n = u.ambient_dim();
    if (u.dim() + v.dim() != n) return false;
    if (n == 0) return true;
    return rank_of(hstack(u.basis(), v.basis()), pol) == n;
}

template <class T>
struct Projector {
    Matrix<T> p;
    Subspace<T> range;
    Subspace<T> nullspace;
};

/// Oblique projector with range m and nullspace n; requires m ⊕ n = whole space.
template <class T>
Projector<T> projector_onto_along(const Subspace<T>& m, const Subspace<T>& n,
                                  const TolerancePolicy& pol = {}) {
    if (!direct_sum_check(m, n, pol))
        throw std::invalid_argument("subspaces are not complementary");
    const std::size_t dim = m.ambient_dim();
    auto s_inv = inverse(hstack(m.basis(), n.basis()), pol);
    if (!s_inv)
        throw NumericalError("complementary basis matrix is numerically singular");
    Matrix<T> left = hstack(m.basis(), Matrix<T>(dim, n.dim()));
    return Projector<T>{left * *s_inv, m, n};
}

/// Deterministic complement: greedy completion by standard basis vectors
/// (exact backend) or the orthogonal complement (float backend).
template <class T>
Subspace<T> complement_of(const Subspace<T>& m, const TolerancePolicy& pol = {}) {
    const std::size_t n = m.ambient_dim();
    if constexpr (scalar_traits<T>::is_exact) {
        Matrix<T> cur = m.basis();
        Matrix<T> picked(n, 0);
        for (std::size_t j = 0; j < n && cur.cols() < n; ++j) {
            Matrix<T> e(n, 1);
            e(j, 0) = T{1};
            Matrix<T> cand = hstack(cur, e);
            if (rank_of(cand, pol) > cur.cols()) {
                cur = std::move(cand);
                picked = hstack(picked, e);
            }
        }
        return Subspace<T>::from_spanning(picked, pol);
    } else {
        const std::size_t k = m.dim();
        if (k == 0) return Subspace<T>::full(n);
        if (k == n) return Subspace<T>::zero(n);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(detail::to_eigen(m.basis()));
        Eigen::MatrixXcd q = qr.householderQ();
        Matrix<T> comp = detail::from_eigen(q.rightCols(static_cast<Eigen::Index>(n - k)));
        return Subspace<T>::from_spanning(comp, pol);
    }
}

/// sin of the largest principal angle between equal-dimensional subspaces;
/// 1.0 when dimensions differ, 0.0 for two zero subspaces. Computed as the
/// norm of v's component orthogonal to u: sqrt(1 - cos^2) through the
/// overlap matrix would floor near-zero angles at sqrt(machine eps).
inline double subspace_gap(const Subspace<Complex>& u, const Subspace<Complex>& v) {
    detail::require_same_ambient(u, v);
    if (u.dim() != v.dim()) return 1.0;
    if (u.dim() == 0) return 0.0;
    Eigen::MatrixXcd ub = detail::to_eigen(u.basis());
    Eigen::MatrixXcd vb = detail::to_eigen(v.basis());
    Eigen::MatrixXcd resid = vb - ub * (ub.adjoint() * vb);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(resid);
    return std::min(1.0, svd.singularValues().maxCoeff());
}

} // namespace ginv
