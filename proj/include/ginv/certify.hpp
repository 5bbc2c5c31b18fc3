#pragma once

#include <map>
#include <string>

#include "ginv/detail/rng.hpp"
#include "ginv/geninv.hpp"

namespace ginv {

enum class InverseKind { INNER, OUTER, REFLEXIVE, MOORE_PENROSE, GROUP, DRAZIN, PQ, MARY };

inline const char* kind_name(InverseKind k) {
    switch (k) {
        case InverseKind::INNER: return "inner";
        case InverseKind::OUTER: return "outer";
        case InverseKind::REFLEXIVE: return "reflexive";
        case InverseKind::MOORE_PENROSE: return "moore_penrose";
        case InverseKind::GROUP: return "group";
        case InverseKind::DRAZIN: return "drazin";
        case InverseKind::PQ: return "pq";
        case InverseKind::MARY: return "mary";
    }
    return "unknown";
}

inline std::optional<InverseKind> parse_kind(const std::string& name) {
    for (InverseKind k : {InverseKind::INNER, InverseKind::OUTER, InverseKind::REFLEXIVE,
                          InverseKind::MOORE_PENROSE, InverseKind::GROUP, InverseKind::DRAZIN,
                          InverseKind::PQ, InverseKind::MARY})
        if (name == kind_name(k)) return k;
    return std::nullopt;
}

/// Side inputs some kinds need: the along element for MARY, the idempotent
/// pair for PQ, prescribed range/nullspace for OUTER and REFLEXIVE.
template <class T>
struct CertifyContext {
    std::optional<Matrix<T>> along;
    std::optional<Matrix<T>> p;
    std::optional<Matrix<T>> q;
    std::optional<Subspace<T>> range;
    std::optional<Subspace<T>> nullsp;
};

/// Machine-checkable verdict: one relative residual per defining identity,
/// 0/1 subspace predicates, and optional witness matrices that themselves
/// satisfy their identities.
template <class T>
struct Certificate {
    InverseKind kind = InverseKind::INNER;
    std::map<std::string, double> identities;
    std::map<std::string, bool> subspace_checks;
    std::map<std::string, Matrix<T>> witnesses;
    double tolerance = 0.0;
    bool pass = false;
};

namespace detail {

template <class T>
void finish_verdict(Certificate<T>& cert, const TolerancePolicy& pol) {
    cert.tolerance = scalar_traits<T>::is_exact ? 0.0 : pol.residual_tol;
    cert.pass = true;
    for (const auto& [name, residual] : cert.identities)
        if (residual > cert.tolerance) cert.pass = false;
    for (const auto& [name, ok] : cert.subspace_checks)
        if (!ok) cert.pass = false;
}

/// Least k with rank(A^k) = rank(A^{k+1}).
template <class T>
std::size_t power_index(const Matrix<T>& a, const TolerancePolicy& pol) {
    const std::size_t n = a.rows();
    Matrix<T> power = Matrix<T>::identity(n);
    std::size_t prev = n, index = 0;
    while (index < n) {
        Matrix<T> next = power * a;
        const std::size_t r = rank_of(next, pol);
        if (r == prev) break;
        power = std::move(next);
        prev = r;
        ++index;
    }
    return index;
}

} // namespace detail

/// Evaluates exactly the defining identity list of the claimed kind against
/// the pair (A, B), plus the subspace predicates where the kind has them.
template <class T>
Certificate<T> certify(const Matrix<T>& a, const Matrix<T>& b, InverseKind kind,
                       const CertifyContext<T>& ctx = {}, const TolerancePolicy& pol = {}) {
    Certificate<T> cert;
    cert.kind = kind;
    const auto residual = [&](const char* name, const Matrix<T>& lhs, const Matrix<T>& rhs) {
        cert.identities[name] = rel_residual(lhs, rhs);
    };

    switch (kind) {
        case InverseKind::INNER:
            residual("ABA=A", a * b * a, a);
            break;
        case InverseKind::OUTER:
        case InverseKind::REFLEXIVE:
            if (kind == InverseKind::REFLEXIVE) residual("ABA=A", a * b * a, a);
            residual("BAB=B", b * a * b, b);
            if (ctx.range)
                cert.subspace_checks["R(B)=M"] =
                    subspace_equal(range_basis(b, pol), *ctx.range, pol);
            if (ctx.nullsp)
                cert.subspace_checks["N(B)=N"] =
                    subspace_equal(nullspace_basis(b, pol), *ctx.nullsp, pol);
            break;
        case InverseKind::MOORE_PENROSE: {
            residual("ABA=A", a * b * a, a);
            residual("BAB=B", b * a * b, b);
            const Matrix<T> ab = a * b, ba = b * a;
            residual("(AB)*=AB", ab.adjoint(), ab);
            residual("(BA)*=BA", ba.adjoint(), ba);
            break;
        }
        case InverseKind::GROUP:
            residual("ABA=A", a * b * a, a);
            residual("BAB=B", b * a * b, b);
            residual("AB=BA", a * b, b * a);
            break;
        case InverseKind::DRAZIN: {
            const std::size_t k = detail::power_index(a, pol);
            const Matrix<T> ak = matrix_power(a, k);
            residual("A^n=A^nBA", ak, ak * b * a);
            residual("BAB=B", b * a * b, b);
            residual("AB=BA", a * b, b * a);
            break;
        }
        case InverseKind::PQ: {
            if (!ctx.p || !ctx.q)
                throw std::invalid_argument("PQ certification needs the idempotent pair");
            residual("BAB=B", b * a * b, b);
            residual("BA=p", b * a, *ctx.p);
            residual("I−AB=q", Matrix<T>::identity(a.rows()) - a * b, *ctx.q);
            break;
        }
        case InverseKind::MARY: {
            if (!ctx.along)
                throw std::invalid_argument("MARY certification needs the along element");
            residual("BAB=B", b * a * b, b);
            cert.subspace_checks["R(B)=R(T)"] =
                subspace_equal(range_basis(b, pol), range_basis(*ctx.along, pol), pol);
            cert.subspace_checks["N(B)=N(T)"] =
                subspace_equal(nullspace_basis(b, pol), nullspace_basis(*ctx.along, pol), pol);
            break;
        }
    }
    detail::finish_verdict(cert, pol);
    return cert;
}

/// Witness package for the idempotent characterization: t = (AD)♯A is a
/// reflexive inverse of D with BA = Dt and AB = tD.
template <class T>
Certificate<T> along_witness_certificate(const Matrix<T>& a, const Matrix<T>& d,
                                         const TolerancePolicy& pol = {}) {
    auto along = inverse_along(a, d, pol);
    if (!along.exists())
        throw std::invalid_argument(std::string("inverse along D does not exist: ") +
                                    describe(along.reason));
    const Matrix<T> b = along.matrix();
    const Matrix<T> t = group_inverse(a * d, pol).matrix() * a;

    Certificate<T> cert;
    cert.kind = InverseKind::MARY;
    cert.identities["tDt=t"] = rel_residual(t * d * t, t);
    cert.identities["DtD=D"] = rel_residual(d * t * d, d);
    cert.identities["BA=Dt"] = rel_residual(b * a, d * t);
    cert.identities["AB=tD"] = rel_residual(a * b, t * d);
    cert.identities["BAB=B"] = rel_residual(b * a * b, b);
    cert.witnesses["t"] = t;
    cert.witnesses["p"] = d * t;
    cert.witnesses["q"] = Matrix<T>::identity(d.rows()) - t * d;
    detail::finish_verdict(cert, pol);
    return cert;
}

namespace detail {

template <class T>
Matrix<T> random_entry_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if constexpr (scalar_traits<T>::is_exact)
                m(i, j) = T(rng.integer(-3, 3));
            else
                m(i, j) = rng.cgauss();
        }
    return m;
}

inline Matrix<Complex> random_unitary(Rng& rng, std::size_t n) {
    return orthonormal_columns(random_entry_matrix<Complex>(rng, n, n));
}

/// Invertible by construction: unit-triangular product with determinant one
/// under the exact backend, unitary × diag(σ ∈ [1/2, 2]) × unitary under
/// float (condition number at most 4).
template <class T>
Matrix<T> random_invertible(Rng& rng, std::size_t n) {
    if constexpr (scalar_traits<T>::is_exact) {
        Matrix<T> lower = Matrix<T>::identity(n);
        Matrix<T> upper = Matrix<T>::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                lower(i, j) = T(rng.integer(-2, 2));
                upper(j, i) = T(rng.integer(-2, 2));
            }
        return lower * upper;
    } else {
        Matrix<T> core(n, n);
        for (std::size_t i = 0; i < n; ++i) core(i, i) = Complex(rng.uniform(0.5, 2.0), 0.0);
        return random_unitary(rng, n) * core * random_unitary(rng, n);
    }
}

} // namespace detail

template <class T>
struct PlantedPair {
    Matrix<T> a;
    Matrix<T> d;
};

namespace detail {

/// Shared scaffolding: D = P [[I,0],[0,0]] Q and A = Q⁻¹ M P⁻¹, so that the
/// existence of the inverse along D is governed entirely by the blocks of M.
template <class T>
PlantedPair<T> assemble_plant(Rng& rng, std::size_t n, std::size_t r, const Matrix<T>& m) {
    const Matrix<T> p = random_invertible<T>(rng, n);
    const Matrix<T> q = random_invertible<T>(rng, n);
    Matrix<T> rank_r(n, n);
    for (std::size_t i = 0; i < r; ++i) rank_r(i, i) = T{1};
    return {inverse(q).value() * m * inverse(p).value(), p * rank_r * q};
}

} // namespace detail

/// Pair (A, D) whose inverse along D exists by construction: the leading
/// block of M is invertible, which makes AD group invertible with the same
/// nullspace as D.
template <class T>
PlantedPair<T> plant_along_pair(std::size_t n, std::size_t r, std::uint64_t seed) {
    if (r < 1 || r > n) throw std::invalid_argument("plant needs 1 <= r <= n");
    detail::Rng rng(seed);
    Matrix<T> m = detail::random_entry_matrix<T>(rng, n, n);
    m.set_block(0, 0, detail::random_invertible<T>(rng, r));
    return detail::assemble_plant(rng, n, r, m);
}

/// Pair (A, D) whose inverse along D provably does not exist. mode 0 breaks
/// kernel containment (𝒩(AD) ⊄ 𝒩(D)); mode 1 keeps containment but makes
/// AD lose rank when squared, so no group inverse.
template <class T>
PlantedPair<T> plant_along_negative(std::size_t n, std::size_t r, std::uint64_t seed, int mode) {
    if (r < 1 || r > n) throw std::invalid_argument("plant needs 1 <= r <= n");
    detail::Rng rng(seed);
    Matrix<T> m = detail::random_entry_matrix<T>(rng, n, n);

    Matrix<T> top = detail::random_invertible<T>(rng, r);
    for (std::size_t i = 0; i < r; ++i) top(i, r - 1) = top(i, 0);
    if (r == 1) top(0, 0) = T{0};
    m.set_block(0, 0, top);

    if (mode == 0) {
        // Rows below reproduce combinations of the singular block: whatever
        // kills the block kills the whole column strip.
        m.set_block(r, 0, detail::random_entry_matrix<T>(rng, n - r, r) * top);
    } else {
        // Column strip keeps full rank while the block is singular.
        Matrix<T> bottom = detail::random_entry_matrix<T>(rng, n - r, r);
        while (n > r && rank_of(vstack(top, bottom)) < r)
            bottom = detail::random_entry_matrix<T>(rng, n - r, r);
        m.set_block(r, 0, bottom);
    }
    return detail::assemble_plant(rng, n, r, m);
}

} // namespace ginv
