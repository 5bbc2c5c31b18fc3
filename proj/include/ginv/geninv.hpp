#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include <Eigen/SVD>

#include "ginv/outcome.hpp"
#include "ginv/subspace.hpp"

namespace ginv {

namespace detail {

/// Defining identities hold exactly under the exact backend, within the
/// residual tolerance under float.
template <class T>
bool identity_holds(const Matrix<T>& lhs, const Matrix<T>& rhs, const TolerancePolicy& pol) {
    if constexpr (scalar_traits<T>::is_exact)
        return lhs == rhs;
    else
        return rel_residual(lhs, rhs) <= pol.residual_tol;
}

/// Full-row-rank C with 𝒩(C) equal to the given subspace.
template <class T>
Matrix<T> annihilator_rows(const Subspace<T>& nsp, const TolerancePolicy& pol) {
    return kernel_basis_matrix(nsp.basis().transpose(), pol).transpose();
}

} // namespace detail

/// Inner inverse with A·B·A = A. Relative to the deterministic complements
/// N of 𝒩(A) and M of ℛ(A), B acts as (A|N)⁻¹ on ℛ(A) and as W : M → 𝒩(A)
/// on the complement; absent W means the zero block. W is a non-deduced
/// context so a bare matrix converts at the call site.
template <class T>
Matrix<T> inner_inverse(const Matrix<T>& a,
                        const std::optional<Matrix<std::type_identity_t<T>>>& w = std::nullopt,
                        const TolerancePolicy& pol = {}) {
    const Subspace<T> ker = nullspace_basis(a, pol);
    const Subspace<T> rng = range_basis(a, pol);
    const Subspace<T> n_comp = complement_of(ker, pol);
    const Subspace<T> m_comp = complement_of(rng, pol);

    Matrix<T> free_block(ker.dim(), m_comp.dim());
    if (w) {
        if (w->rows() != ker.dim() || w->cols() != m_comp.dim())
            throw std::invalid_argument("free block W must map the range complement into the nullspace");
        free_block = *w;
    }

    Matrix<T> s = hstack(a * n_comp.basis(), m_comp.basis());
    auto s_inv = inverse(s, pol);
    if (!s_inv) throw NumericalError("adapted basis is numerically singular");
    Matrix<T> left = hstack(n_comp.basis(), ker.basis() * free_block);
    return left * *s_inv;
}

/// Unique outer inverse with prescribed range and nullspace, B = U(CAU)⁻¹C;
/// exists iff A keeps the range's dimension and A·range ⊕ nullspace spans.
template <class T>
InverseResult<T> outer_prescribed(const Matrix<T>& a, const Subspace<T>& range,
                                  const Subspace<T>& nullsp, const TolerancePolicy& pol = {}) {
    if (range.ambient_dim() != a.cols() || nullsp.ambient_dim() != a.rows() ||
        range.dim() + nullsp.dim() != a.rows())
        throw std::invalid_argument("prescribed subspaces do not match the matrix shape");

    const Matrix<T> u = range.basis();
    const Matrix<T> c = detail::annihilator_rows(nullsp, pol);
    auto core = inverse(c * (a * u), pol);
    if (!core) {
        const auto reason = rank_of(a * u, pol) < range.dim()
                                ? NotExistsReason::image_dimension_drop
                                : NotExistsReason::not_complementary;
        return InverseResult<T>::missing(reason);
    }
    return InverseResult<T>::found(u * *core * c);
}

/// Unique reflexive inverse with ℛ(B) = range, 𝒩(B) = nullsp, given the
/// decompositions range ⊕ 𝒩(A) and ℛ(A) ⊕ nullsp of the two spaces.
template <class T>
Matrix<T> reflexive_prescribed(const Matrix<T>& a, const Subspace<T>& range,
                               const Subspace<T>& nullsp, const TolerancePolicy& pol = {}) {
    if (!direct_sum_check(range, nullspace_basis(a, pol), pol) ||
        !direct_sum_check(range_basis(a, pol), nullsp, pol))
        throw std::invalid_argument("prescribed subspaces do not decompose the space");
    auto out = outer_prescribed(a, range, nullsp, pol);
    if (!out.exists()) throw NumericalError("reflexive construction is numerically singular");
    return out.matrix();
}

/// Moore–Penrose inverse: rank-factorized closed form under the exact
/// backend, singular value decomposition with relative threshold under float.
template <class T>
Matrix<T> moore_penrose(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    if constexpr (scalar_traits<T>::is_exact) {
        auto fact = rank_factorize(a, pol);
        if (fact.rank == 0) return Matrix<T>(a.cols(), a.rows());
        auto gram_g = inverse(fact.g * fact.g.transpose(), pol);
        auto gram_f = inverse(fact.f.transpose() * fact.f, pol);
        if (!gram_g || !gram_f) throw NumericalError("rank factor Gram matrix is singular");
        return fact.g.transpose() * *gram_g * *gram_f * fact.f.transpose();
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(a),
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        Eigen::MatrixXcd pinv = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(a.cols()),
                                                       static_cast<Eigen::Index>(a.rows()));
        if (smax > 0.0) {
            Eigen::VectorXcd inv_sv = Eigen::VectorXcd::Zero(sv.size());
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                const double ratio = sv(i) / smax;
                if (pol.ambiguity_factor > 1.0 && ratio > pol.rank_tol / pol.ambiguity_factor &&
                    ratio <= pol.rank_tol * pol.ambiguity_factor)
                    throw NumericalError("rank decision within the ambiguity band of the threshold");
                if (ratio > pol.rank_tol) inv_sv(i) = Complex(1.0 / sv(i), 0.0);
            }
            pinv = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
        }
        return detail::from_eigen(pinv);
    }
}

/// Group inverse A♯ = F(GF)⁻²G from a rank factorization A = FG;
/// exists iff GF is invertible, equivalently rank(A) = rank(A²).
template <class T>
InverseResult<T> group_inverse(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    if (a.rows() != a.cols()) throw std::invalid_argument("group inverse needs a square matrix");
    auto fact = rank_factorize(a, pol);
    auto core = inverse(fact.g * fact.f, pol);
    if (!core) return InverseResult<T>::missing(NotExistsReason::rank_square_drop);
    return InverseResult<T>::found(fact.f * *core * *core * fact.g);
}

template <class T>
struct DrazinResult {
    Matrix<T> b;
    std::size_t index = 0;
};

/// Drazin inverse by recursive rank factorization: A = FG, A^D = F((GF)^D)²G,
/// peeling one index level per step until the core is invertible or empty.
template <class T>
DrazinResult<T> drazin_inverse(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Drazin inverse needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return {Matrix<T>(0, 0), 0};
    auto fact = rank_factorize(a, pol);
    if (fact.rank == n) {
        auto inv = inverse(a, pol);
        if (!inv) throw NumericalError("full-rank matrix failed to invert");
        return {std::move(*inv), 0};
    }
    auto core = drazin_inverse(fact.g * fact.f, pol);
    return {fact.f * core.b * core.b * fact.g, core.index + 1};
}

/// Inverse of A along D: exists iff 𝒩(AD) ⊆ 𝒩(D) and AD is group
/// invertible, and then equals D(AD)♯.
template <class T>
InverseResult<T> inverse_along(const Matrix<T>& a, const Matrix<T>& d,
                               const TolerancePolicy& pol = {}) {
    if (a.rows() != a.cols() || d.rows() != d.cols() || a.rows() != d.rows())
        throw std::invalid_argument("inverse along an element needs square matrices of one size");
    const Matrix<T> ad = a * d;
    if (!subspace_contained(nullspace_basis(ad, pol), nullspace_basis(d, pol), pol))
        return InverseResult<T>::missing(NotExistsReason::kernel_not_contained);
    auto core = group_inverse(ad, pol);
    if (!core.exists()) return InverseResult<T>::missing(NotExistsReason::core_not_group);
    return InverseResult<T>::found(d * core.matrix());
}

/// Geometric existence report for the inverse along T, each condition
/// evaluated independently. Closedness/complementability of ℛ(T) and 𝒩(T)
/// is automatic in finite dimension and reported as such.
template <class T>
struct AlongDiagnosis {
    bool rn_closed_complemented = true;
    Subspace<T> range_at;
    bool direct_sum_holds = false;
    bool reduction_invertible = false;
    bool exists = false;
};

template <class T>
AlongDiagnosis<T> diagnose_along(const Matrix<T>& a, const Matrix<T>& t,
                                 const TolerancePolicy& pol = {}) {
    if (a.rows() != a.cols() || t.rows() != t.cols() || a.rows() != t.rows())
        throw std::invalid_argument("diagnosis needs square matrices of one size");
    AlongDiagnosis<T> diag;
    const Matrix<T> at = a * t;
    diag.range_at = range_basis(at, pol);
    diag.direct_sum_holds = direct_sum_check(diag.range_at, nullspace_basis(t, pol), pol);
    diag.reduction_invertible = diag.range_at.dim() == rank_of(t, pol);
    diag.exists = diag.rn_closed_complemented && diag.direct_sum_holds && diag.reduction_invertible;
    return diag;
}

/// Outer inverse with BA = p and I − AB = q for prescribed idempotents:
/// reduces to the outer inverse with range ℛ(p), nullspace ℛ(q), then
/// verifies the two extra identities.
template <class T>
InverseResult<T> pq_inverse(const Matrix<T>& a, const Matrix<T>& p, const Matrix<T>& q,
                            const TolerancePolicy& pol = {}) {
    const std::size_t n = a.rows();
    if (a.cols() != n || p.rows() != n || p.cols() != n || q.rows() != n || q.cols() != n)
        throw std::invalid_argument("(p,q)-inverse needs square matrices of one size");
    if (!detail::identity_holds(p * p, p, pol))
        throw std::invalid_argument("p is not idempotent");
    if (!detail::identity_holds(q * q, q, pol))
        throw std::invalid_argument("q is not idempotent");

    const Subspace<T> range = range_basis(p, pol);
    const Subspace<T> nullsp = range_basis(q, pol);
    if (range.dim() + nullsp.dim() != n)
        return InverseResult<T>::missing(NotExistsReason::rank_incompatible);

    auto cand = outer_prescribed(a, range, nullsp, pol);
    if (!cand.exists()) return cand;
    const Matrix<T>& b = cand.matrix();
    if (!detail::identity_holds(b * a, p, pol))
        return InverseResult<T>::missing(NotExistsReason::left_identity_failed);
    if (!detail::identity_holds(Matrix<T>::identity(n) - a * b, q, pol))
        return InverseResult<T>::missing(NotExistsReason::right_identity_failed);
    return cand;
}

template <class T>
struct PqWitness {
    Matrix<T> p;
    Matrix<T> q;
    Matrix<T> t;
};

/// The idempotent pair identifying the inverse along D as a (p,q)-inverse:
/// t = (AD)♯A, p = Dt, q = I − tD. t is a reflexive inverse of D.
template <class T>
PqWitness<T> pq_idempotents(const Matrix<T>& a, const Matrix<T>& d,
                            const TolerancePolicy& pol = {}) {
    auto along = inverse_along(a, d, pol);
    if (!along.exists())
        throw std::invalid_argument(std::string("inverse along D does not exist: ") +
                                    describe(along.reason));
    const Matrix<T> t = group_inverse(a * d, pol).matrix() * a;
    return {d * t, Matrix<T>::identity(d.rows()) - t * d, t};
}

/// (p,q)-inverse through the product form C(AC)♯, after checking that the
/// (p,q)-inverse of A and the reflexive (1−q,1−p)-inverse of C both exist;
/// the result is asserted equal to the directly computed (p,q)-inverse.
template <class T>
Matrix<T> pq_inverse_via_product(const Matrix<T>& a, const Matrix<T>& c, const Matrix<T>& p,
                                 const Matrix<T>& q, const TolerancePolicy& pol = {}) {
    auto direct = pq_inverse(a, p, q, pol);
    if (!direct.exists())
        throw std::invalid_argument(std::string("(p,q)-inverse of A does not exist: ") +
                                    describe(direct.reason));
    const Matrix<T> id = Matrix<T>::identity(a.rows());
    auto cofactor = pq_inverse(c, id - q, id - p, pol);
    if (!cofactor.exists())
        throw std::invalid_argument(std::string("(1-q,1-p)-inverse of C does not exist: ") +
                                    describe(cofactor.reason));
    if (!detail::identity_holds(c * cofactor.matrix() * c, c, pol))
        throw std::invalid_argument("the (1-q,1-p)-inverse of C is not inner");
    auto grp = group_inverse(a * c, pol);
    if (!grp.exists()) throw std::invalid_argument("AC is not group invertible");
    Matrix<T> b = c * grp.matrix();
    if (!detail::identity_holds(b, direct.matrix(), pol))
        throw NumericalError("product route disagrees with the direct (p,q)-inverse");
    return b;
}

} // namespace ginv
