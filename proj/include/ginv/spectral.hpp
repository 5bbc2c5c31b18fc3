#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ginv/geninv.hpp"
#include "ginv/subspace.hpp"
#include "ginv/sylvester.hpp"

namespace ginv {

/// Minimal eigenvalue-to-circle distance for a valid separating contour.
inline constexpr double contour_clearance = 1e-8;
/// Absolute gap below which eigenvalues count as one cluster.
inline constexpr double eigenvalue_cluster_gap = 1e-8;
/// Two successive quadrature refinements must agree to this before stopping.
inline constexpr double quadrature_agreement = 1e-10;
inline constexpr std::size_t max_quadrature_points = 1024;

/// Eigenvalues with algebraic multiplicity, sorted by (re, im).
inline std::vector<Complex> spectrum(const Matrix<Complex>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spectrum needs a square matrix");
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(detail::to_eigen(a), false);
    std::vector<Complex> eigs(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        eigs[i] = schur.matrixT()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    std::sort(eigs.begin(), eigs.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return eigs;
}

inline Matrix<Complex> resolvent(const Matrix<Complex>& a, Complex lambda,
                                 const TolerancePolicy& pol = {}) {
    Matrix<Complex> shifted = a - Matrix<Complex>::identity(a.rows()) * lambda;
    auto inv = inverse(shifted, pol);
    if (!inv) throw NumericalError("resolvent point lies in the spectrum");
    return *inv;
}

/// A partition of the eigenvalue multiset into a selected group and its
/// complement, with positive distance between the groups.
struct SpectralSet {
    std::vector<Complex> lambda_members;
    std::vector<Complex> complement_members;
    double separation_gap = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double group_separation(const std::vector<Complex>& xs, const std::vector<Complex>& ys) {
    double gap = std::numeric_limits<double>::infinity();
    for (Complex x : xs)
        for (Complex y : ys) gap = std::min(gap, std::abs(x - y));
    return gap;
}

} // namespace detail

/// Spectral set from explicitly chosen eigenvalues; each chosen value must
/// hit an eigenvalue, and the selection may not split a cluster.
inline SpectralSet select_members(const Matrix<Complex>& a, const std::vector<Complex>& chosen) {
    SpectralSet set;
    const auto eigs = spectrum(a);
    for (Complex c : chosen) {
        const bool hit = std::any_of(eigs.begin(), eigs.end(), [&](Complex e) {
            return std::abs(e - c) <= eigenvalue_cluster_gap;
        });
        if (!hit) throw std::invalid_argument("selected value matches no eigenvalue");
    }
    for (Complex e : eigs) {
        const bool member = std::any_of(chosen.begin(), chosen.end(), [&](Complex c) {
            return std::abs(e - c) <= eigenvalue_cluster_gap;
        });
        (member ? set.lambda_members : set.complement_members).push_back(e);
    }
    set.separation_gap = detail::group_separation(set.lambda_members, set.complement_members);
    if (set.separation_gap <= eigenvalue_cluster_gap)
        throw std::invalid_argument("selection splits an eigenvalue cluster");
    return set;
}

/// Spectral set of all eigenvalues inside the disk; eigenvalues within
/// contour_clearance of the boundary circle are rejected, not adjudicated.
inline SpectralSet select_disk(const Matrix<Complex>& a, Complex center, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disk radius must be positive");
    SpectralSet set;
    for (Complex e : spectrum(a)) {
        const double dist = std::abs(e - center);
        if (std::abs(dist - radius) <= contour_clearance)
            throw NumericalError("eigenvalue too close to the separating circle");
        (dist < radius ? set.lambda_members : set.complement_members).push_back(e);
    }
    set.separation_gap = detail::group_separation(set.lambda_members, set.complement_members);
    return set;
}

struct Contour {
    Complex center;
    double radius = 1.0;
    std::size_t points = 64;
};

namespace detail {

/// Unitary similarity swapping adjacent diagonal entries of a triangular
/// factor; columns of g are an eigenvector for the lower entry and its
/// orthogonal complement.
inline void swap_schur_diagonal(Eigen::MatrixXcd& t, Eigen::MatrixXcd& u, Eigen::Index i) {
    const Complex alpha = t(i, i), beta = t(i, i + 1), gamma = t(i + 1, i + 1);
    const Complex v1 = beta, v2 = gamma - alpha;
    const double nrm = std::sqrt(std::norm(v1) + std::norm(v2));
    if (nrm == 0.0) throw NumericalError("cannot reorder coincident eigenvalues across groups");
    Eigen::Matrix2cd g;
    g << v1 / nrm, -std::conj(v2) / nrm, v2 / nrm, std::conj(v1) / nrm;
    t.middleCols(i, 2) = t.middleCols(i, 2) * g;
    t.middleRows(i, 2) = g.adjoint() * t.middleRows(i, 2);
    u.middleCols(i, 2) = u.middleCols(i, 2) * g;
    t(i + 1, i) = Complex(0, 0);
}

inline bool nearer_to_first_group(Complex lambda, const std::vector<Complex>& first,
                                  const std::vector<Complex>& second) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (Complex m : first) d1 = std::min(d1, std::abs(lambda - m));
    for (Complex m : second) d2 = std::min(d2, std::abs(lambda - m));
    return d1 < d2;
}

} // namespace detail

/// Spectral projection via triangularization: reorder the selected
/// eigenvalues into the leading block, solve one triangular Sylvester
/// equation for the coupling, and assemble P = U [[I,Y],[0,0]] Uᴴ.
inline Projector<Complex> spectral_projection_schur(const Matrix<Complex>& a,
                                                    const SpectralSet& set,
                                                    const TolerancePolicy& pol = {}) {
    const std::size_t n = a.rows();
    if (set.lambda_members.size() + set.complement_members.size() != n)
        throw std::invalid_argument("spectral set does not partition the spectrum");
    if (!(set.separation_gap > 0))
        throw std::invalid_argument("spectral set lacks positive separation");

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(detail::to_eigen(a), true);
    Eigen::MatrixXcd t = schur.matrixT();
    Eigen::MatrixXcd u = schur.matrixU();
    const auto ni = static_cast<Eigen::Index>(n);

    std::vector<bool> in(n);
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < ni; ++i) {
        in[static_cast<std::size_t>(i)] =
            detail::nearer_to_first_group(t(i, i), set.lambda_members, set.complement_members);
        count += in[static_cast<std::size_t>(i)] ? 1 : 0;
    }
    if (count != set.lambda_members.size())
        throw NumericalError("eigenvalue grouping does not match the spectral set");

    bool moved = true;
    while (moved) {
        moved = false;
        for (Eigen::Index i = 0; i + 1 < ni; ++i) {
            const auto lo = static_cast<std::size_t>(i);
            if (!in[lo] && in[lo + 1]) {
                detail::swap_schur_diagonal(t, u, i);
                in[lo] = true;
                in[lo + 1] = false;
                moved = true;
            }
        }
    }

    const auto p = static_cast<Eigen::Index>(set.lambda_members.size());
    const Eigen::MatrixXcd y = detail::solve_sylvester_triangular(
        t.topLeftCorner(p, p), t.bottomRightCorner(ni - p, ni - p), t.topRightCorner(p, ni - p));
    Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(ni, ni);
    pm.topLeftCorner(p, p).setIdentity();
    pm.topRightCorner(p, ni - p) = y;

    Eigen::MatrixXcd null_span(ni, ni - p);
    null_span.topRows(p) = -y;
    null_span.bottomRows(ni - p).setIdentity();

    Projector<Complex> proj;
    proj.p = detail::from_eigen(u * pm * u.adjoint());
    proj.range = Subspace<Complex>::from_spanning(detail::from_eigen(u.leftCols(p)), pol);
    proj.nullspace = Subspace<Complex>::from_spanning(detail::from_eigen(u * null_span), pol);
    return proj;
}

/// Spectral projection as −(1/2πi)∮ R_λ dλ by trapezoidal quadrature on the
/// circle, point count doubled until two refinements agree.
inline Projector<Complex> spectral_projection_contour(const Matrix<Complex>& a, const Contour& c,
                                                      const TolerancePolicy& pol = {}) {
    const std::size_t n = a.rows();
    std::size_t inside = 0;
    for (Complex e : spectrum(a)) {
        const double dist = std::abs(e - c.center);
        if (std::abs(dist - c.radius) <= contour_clearance)
            throw NumericalError("eigenvalue too close to the separating circle");
        inside += dist < c.radius ? 1 : 0;
    }

    const auto evaluate = [&](std::size_t npts) {
        Matrix<Complex> acc(n, n);
        for (std::size_t k = 0; k < npts; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(npts);
            const Complex e = std::polar(1.0, theta);
            acc = acc + resolvent(a, c.center + c.radius * e, pol) * e;
        }
        return acc * Complex(-c.radius / static_cast<double>(npts), 0.0);
    };

    std::size_t npts = std::max<std::size_t>(c.points, 4);
    Matrix<Complex> approx = evaluate(npts);
    while (npts < max_quadrature_points) {
        Matrix<Complex> finer = evaluate(npts * 2);
        npts *= 2;
        const double diff = max_abs_diff(approx, finer);
        approx = std::move(finer);
        if (diff < quadrature_agreement) break;
    }

    // A projector's nonzero singular values are >= 1, so an absolute cutoff
    // reads its rank through the quadrature noise. A scale-relative cutoff
    // would misread the empty selection, where the whole matrix is noise.
    const auto span_above = [](const Matrix<Complex>& m) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m), Eigen::ComputeThinU);
        Eigen::Index r = 0;
        while (r < svd.singularValues().size() && svd.singularValues()(r) > 1e-6) ++r;
        return detail::from_eigen(svd.matrixU().leftCols(r));
    };
    const Matrix<Complex> range_span = span_above(approx);
    const Matrix<Complex> null_span = span_above(Matrix<Complex>::identity(n) - approx);
    if (range_span.cols() != inside || null_span.cols() != n - inside)
        throw NumericalError("quadrature projector rank does not match the enclosed eigenvalues");
    Projector<Complex> proj;
    proj.p = approx;
    proj.range = Subspace<Complex>::from_spanning(range_span, pol);
    proj.nullspace = Subspace<Complex>::from_spanning(null_span, pol);
    return proj;
}

/// The space split X = K(A) ⊕ H₀(A): analytical core ℛ(A^k) and
/// quasinilpotent part 𝒩(A^k) at k the smallest power where rank stops
/// dropping (equivalently the index of the zero eigenvalue).
struct SpectralDecomposition {
    Subspace<Complex> h0;
    Subspace<Complex> k;
    std::size_t index = 0;
};

inline SpectralDecomposition decompose_h0_core(const Matrix<Complex>& a,
                                               const TolerancePolicy& pol = {}) {
    if (a.rows() != a.cols()) throw std::invalid_argument("decomposition needs a square matrix");
    const std::size_t n = a.rows();
    Matrix<Complex> power = Matrix<Complex>::identity(n);
    std::size_t prev_rank = n, index = 0;
    while (index < n) {
        Matrix<Complex> next = power * a;
        const std::size_t r = rank_of(next, pol);
        if (r == prev_rank) break;
        power = std::move(next);
        prev_rank = r;
        ++index;
    }
    return {nullspace_basis(power, pol), range_basis(power, pol), index};
}

/// For matrices the quasinilpotent part is nilpotent, so this inverse
/// coincides with the classical one produced by the factorization recursion.
inline Matrix<Complex> koliha_drazin(const Matrix<Complex>& a, const TolerancePolicy& pol = {}) {
    return drazin_inverse(a, pol).b;
}

/// Inverse along the spectral projection: along P_Λ when 0 ∉ Λ, along
/// I − P_Λ when 0 ∈ Λ. Existence is a theorem; failure to certify is a bug.
inline Matrix<Complex> inverse_along_spectral(const Matrix<Complex>& a, const SpectralSet& set,
                                              const TolerancePolicy& pol = {}) {
    // Zero membership is read off the matrix, not the computed eigenvalues:
    // a defective zero eigenvalue computes as a cloud of magnitude far above
    // machine precision (about eps^(1/index)), so instead test singularity
    // and assign the zero cluster to the nearer group.
    const bool zero_selected =
        rank_of(a, pol) < a.rows() &&
        detail::nearer_to_first_group(Complex(0, 0), set.lambda_members,
                                      set.complement_members);
    const Matrix<Complex> p = spectral_projection_schur(a, set, pol).p;
    const Matrix<Complex> d =
        zero_selected ? Matrix<Complex>::identity(a.rows()) - p : p;
    auto res = inverse_along(a, d, pol);
    if (!res.exists())
        throw NumericalError(std::string("spectral inverse-along construction failed: ") +
                             describe(res.reason));
    return res.matrix();
}

/// Report for the core/quasinilpotent route: the inverse along the projector
/// onto K(A) along H₀(A) must exist and reproduce the Koliha–Drazin inverse.
/// K(A) = {0} (nilpotent input) makes the along-element zero, which the
/// existence theorem excludes; reported as degenerate instead.
struct KdCoreReport {
    bool degenerate = false;
    bool exists = false;
    double residual = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

inline KdCoreReport verify_kd_along_core(const Matrix<Complex>& a, const TolerancePolicy& pol = {}) {
    KdCoreReport report;
    auto dec = decompose_h0_core(a, pol);
    report.index = dec.index;
    if (dec.k.dim() == 0) {
        report.degenerate = true;
        return report;
    }
    auto proj = projector_onto_along(dec.k, dec.h0, pol);
    auto res = inverse_along(a, proj.p, pol);
    report.exists = res.exists();
    if (report.exists) report.residual = rel_residual(res.matrix(), koliha_drazin(a, pol));
    return report;
}

/// Checks 𝒩(P_Λ) ⊆ K(A) for Λ the part of the spectrum inside |λ| < r.
struct CoreInclusionReport {
    bool holds = false;
    std::size_t projector_nullity = 0;
    std::size_t core_dim = 0;
};

inline CoreInclusionReport verify_core_inclusion(const Matrix<Complex>& a, double radius,
                                                 const TolerancePolicy& pol = {}) {
    auto set = select_disk(a, Complex(0, 0), radius);
    auto proj = spectral_projection_schur(a, set, pol);
    auto dec = decompose_h0_core(a, pol);
    CoreInclusionReport report;
    report.holds = subspace_contained(proj.nullspace, dec.k, pol);
    report.projector_nullity = proj.nullspace.dim();
    report.core_dim = dec.k.dim();
    return report;
}

} // namespace ginv
