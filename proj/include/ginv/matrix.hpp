#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ginv/scalar.hpp"

namespace ginv {

/// Dense row-major matrix over one scalar backend. Zero-sized shapes are
/// legal values: an n x 0 or 0 x m matrix carries no entries, and products
/// through a zero inner dimension give zero matrices of the outer shape.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("inner dimensions disagree");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                if (scalar_traits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += aik * o(k, j);
            }
        return r;
    }

    Matrix operator*(const T& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * s;
        return r;
    }

    friend Matrix operator*(const T& s, const Matrix& m) { return m * s; }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Conjugate transpose; coincides with transpose() on the exact backend.
    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = scalar_traits<T>::conj((*this)(i, j));
        return r;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) throw std::invalid_argument("block out of range");
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
        if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_)
            throw std::invalid_argument("block out of range");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!scalar_traits<T>::is_zero(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, scalar_traits<T>::abs_double(v));
        return m;
    }

    double frobenius_norm() const {
        if constexpr (scalar_traits<T>::is_exact) {
            Rational s = 0;
            for (const auto& v : data_) s += v * v;
            return std::sqrt(scalar_traits<Rational>::to_double(s));
        } else {
            double s = 0.0;
            for (const auto& v : data_) s += std::norm(v);
            return std::sqrt(s);
        }
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row counts disagree");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts disagree");
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& a, unsigned k) {
    if (!a.is_square()) throw std::invalid_argument("matrix_power requires a square matrix");
    Matrix<T> acc = Matrix<T>::identity(a.rows());
    for (unsigned i = 0; i < k; ++i) acc = acc * a;
    return acc;
}

/// Relative Frobenius residual ||lhs - rhs|| / max(1, ||lhs||). Exactly zero
/// under the exact backend iff the two sides are equal.
template <class T>
double rel_residual(const Matrix<T>& lhs, const Matrix<T>& rhs) {
    if constexpr (scalar_traits<T>::is_exact) {
        if (lhs == rhs) return 0.0;
    }
    const double num = (lhs - rhs).frobenius_norm();
    return num / std::max(1.0, lhs.frobenius_norm());
}

/// Entrywise max |lhs - rhs|.
template <class T>
double max_abs_diff(const Matrix<T>& lhs, const Matrix<T>& rhs) {
    return (lhs - rhs).max_abs();
}

template <class T>
Matrix<Complex> to_complex(const Matrix<T>& m) {
    Matrix<Complex> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (scalar_traits<T>::is_exact)
                r(i, j) = Complex(scalar_traits<T>::to_double(m(i, j)), 0.0);
            else
                r(i, j) = m(i, j);
        }
    return r;
}

} // namespace ginv
