#pragma once

// Conversions between the dense Matrix type and Eigen, used by the float
// backend for orthogonal factorizations and eigenvalue work.

#include <Eigen/Dense>

#include "ginv/matrix.hpp"

namespace ginv::detail {

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e) {
    Matrix<Complex> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

} // namespace ginv::detail
