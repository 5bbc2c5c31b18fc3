#pragma once

#include <Eigen/Eigenvalues>

#include "ginv/detail/eigen_bridge.hpp"
#include "ginv/error.hpp"
#include "ginv/matrix.hpp"

namespace ginv {

namespace detail {

/// Sylvester solve t1·y − y·t2 = c for upper-triangular t1, t2 by forward
/// column sweep and back substitution. Throws when the spectra touch.
inline Eigen::MatrixXcd solve_sylvester_triangular(const Eigen::MatrixXcd& t1,
                                                   const Eigen::MatrixXcd& t2,
                                                   const Eigen::MatrixXcd& c) {
    const Eigen::Index p = t1.rows(), q = t2.rows();
    const double scale = std::max({p > 0 ? t1.cwiseAbs().maxCoeff() : 0.0,
                                   q > 0 ? t2.cwiseAbs().maxCoeff() : 0.0, 1.0});
    Eigen::MatrixXcd y(p, q);
    for (Eigen::Index k = 0; k < q; ++k) {
        Eigen::VectorXcd rhs = c.col(k);
        for (Eigen::Index j = 0; j < k; ++j) rhs += y.col(j) * t2(j, k);
        for (Eigen::Index i = p - 1; i >= 0; --i) {
            Complex s = rhs(i);
            for (Eigen::Index j = i + 1; j < p; ++j) s -= t1(i, j) * y(j, k);
            const Complex d = t1(i, i) - t2(k, k);
            if (std::abs(d) <= 1e-14 * scale)
                throw NumericalError("Sylvester equation is ill posed: spectra overlap");
            y(i, k) = s / d;
        }
    }
    return y;
}

} // namespace detail

/// X with a11·X − X·a22 = c; requires disjoint spectra (Bartels–Stewart).
inline Matrix<Complex> solve_sylvester(const Matrix<Complex>& a11, const Matrix<Complex>& a22,
                                       const Matrix<Complex>& c) {
    if (a11.rows() != a11.cols() || a22.rows() != a22.cols())
        throw std::invalid_argument("Sylvester coefficients must be square");
    if (c.rows() != a11.rows() || c.cols() != a22.rows())
        throw std::invalid_argument("Sylvester right-hand side has mismatched shape");
    Eigen::ComplexSchur<Eigen::MatrixXcd> s1(detail::to_eigen(a11), true);
    Eigen::ComplexSchur<Eigen::MatrixXcd> s2(detail::to_eigen(a22), true);
    const Eigen::MatrixXcd rhs =
        s1.matrixU().adjoint() * detail::to_eigen(c) * s2.matrixU();
    const Eigen::MatrixXcd y = detail::solve_sylvester_triangular(s1.matrixT(), s2.matrixT(), rhs);
    return detail::from_eigen(s1.matrixU() * y * s2.matrixU().adjoint());
}

} // namespace ginv
