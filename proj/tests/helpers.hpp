#pragma once

// Shared literal-builders for the test suites: integer and string-rational
// initializers for the exact backend, double initializers for the float one.

#include <initializer_list>
#include <vector>

#include "ginv/certify.hpp"

namespace testutil {

inline ginv::Matrix<ginv::Rational> rm(
    std::initializer_list<std::initializer_list<long long>> rows) {
    ginv::Matrix<ginv::Rational> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long long v : r) m(i, j++) = ginv::Rational(v);
        ++i;
    }
    return m;
}

// Entries given as "p/q" strings so fractional literals stay exact.
inline ginv::Matrix<ginv::Rational> rq(
    std::initializer_list<std::initializer_list<const char*>> rows) {
    ginv::Matrix<ginv::Rational> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const char* v : r) m(i, j++) = ginv::parse_rational(v);
        ++i;
    }
    return m;
}

inline ginv::Matrix<ginv::Complex> cm(std::initializer_list<std::initializer_list<double>> rows) {
    ginv::Matrix<ginv::Complex> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) m(i, j++) = ginv::Complex(v, 0.0);
        ++i;
    }
    return m;
}

template <class T>
ginv::Matrix<T> diag(const std::vector<T>& entries) {
    ginv::Matrix<T> m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

// The worked 2x2 pair used throughout: A is the upper shift, D_a = a*[[2,0],[1,0]].
template <class T>
ginv::Matrix<T> shift2() {
    ginv::Matrix<T> a(2, 2);
    a(0, 1) = T{1};
    return a;
}

template <class T>
ginv::Matrix<T> along2(long long a) {
    ginv::Matrix<T> d(2, 2);
    d(0, 0) = T(2 * a);
    d(1, 0) = T(a);
    return d;
}

// Truncation of the sequence-space pair: (Ax)_i = x_{i+1}/(i+1), T swaps
// coordinates 1,2 into slots 3,2; V shifts (x1,x2) into slots 2,3.
template <class T>
ginv::Matrix<T> seq_a(std::size_t n) {
    ginv::Matrix<T> a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = T{1} / T(static_cast<long long>(i) + 2);
    return a;
}

template <class T>
ginv::Matrix<T> seq_t(std::size_t n) {
    ginv::Matrix<T> t(n, n);
    t(1, 1) = T{1};
    t(2, 0) = T{1};
    return t;
}

template <class T>
ginv::Matrix<T> seq_v(std::size_t n) {
    ginv::Matrix<T> v(n, n);
    v(1, 0) = T{1};
    v(2, 1) = T{1};
    return v;
}

template <class T>
ginv::Matrix<T> seq_b(std::size_t n) {
    ginv::Matrix<T> b(n, n);
    b(1, 0) = T{2};
    b(2, 1) = T{3};
    return b;
}

} // namespace testutil
