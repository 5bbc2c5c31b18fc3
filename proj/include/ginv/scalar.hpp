#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "ginv/error.hpp"

namespace ginv {

/// Exact backend scalar: arbitrary-precision rational, always in lowest
/// terms with positive denominator. Arithmetic never rounds.
using Rational = boost::multiprecision::cpp_rational;
using Integer  = boost::multiprecision::cpp_int;

/// Float backend scalar.
using Complex = std::complex<double>;

/// Thresholds for all rank and acceptance decisions under the float
/// backend. Ignored entirely under the exact backend.
struct TolerancePolicy {
    /// Relative rank threshold: a pivot is treated as zero when its
    /// magnitude falls below rank_tol * (largest magnitude in the factor).
    double rank_tol = 1e-10;
    /// Residual acceptance threshold for certification verdicts.
    double residual_tol = 1e-9;
    /// When > 1, a rank decision with a pivot inside
    /// (rank_tol/f, rank_tol*f] relative to scale throws NumericalError
    /// instead of silently deciding. 0 disables the guard.
    double ambiguity_factor = 0.0;

    void validate() const {
        if (!(rank_tol > 0.0) || !(residual_tol > 0.0))
            throw std::invalid_argument("tolerance policy requires positive thresholds");
    }
};

/// Builds a reduced rational from any numerator/denominator pair.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(num, den); // cpp_rational reduces on construction
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    using magnitude_type = Rational;

    static Rational conj(const Rational& x) { return x; }
    static Rational magnitude(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static double abs_double(const Rational& x) { return std::fabs(to_double(x)); }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool is_exact = false;
    using magnitude_type = double;

    static Complex conj(const Complex& x) { return std::conj(x); }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
    static double to_double(const Complex& x) { return x.real(); }
    static double abs_double(const Complex& x) { return std::abs(x); }
};

/// Division with an explicit zero-divisor contract shared by both backends.
template <class T>
T checked_div(const T& x, const T& y) {
    if (scalar_traits<T>::is_zero(y)) throw std::domain_error("division by zero");
    return x / y;
}

/// True when x can be treated as zero at the given scale. Exact backend:
/// true iff x == 0. Float backend: |x| <= rank_tol * max(scale, 1).
template <class T>
bool is_negligible(const T& x, double scale, const TolerancePolicy& pol) {
    if constexpr (scalar_traits<T>::is_exact) {
        (void)scale; (void)pol;
        return scalar_traits<T>::is_zero(x);
    } else {
        return scalar_traits<T>::abs_double(x) <= pol.rank_tol * std::max(scale, 1.0);
    }
}

// ---------------------------------------------------------------------------
// text forms: rationals as "p/q" (q omitted when 1), doubles in the shortest
// form that round-trips
// ---------------------------------------------------------------------------

inline std::string format_rational(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) {
        s += '/';
        s += denominator(x).str();
    }
    return s;
}

/// Strict decimal integer: optional sign, digits only. cpp_int would read a
/// leading zero as an octal prefix (and "" as zero), so tokens are validated
/// and leading zeros stripped before construction.
inline Integer parse_integer_token(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i == text.size()) throw ParseError("unparseable integer: '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9')
            throw ParseError("unparseable integer: '" + std::string(text) + "'");
    while (i + 1 < text.size() && text[i] == '0') ++i;
    Integer v{std::string(text.substr(i))};
    return neg ? Integer(-v) : v;
}

inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rational(parse_integer_token(text));
        Integer num = parse_integer_token(text.substr(0, slash));
        Integer den = parse_integer_token(text.substr(slash + 1));
        return make_rational(std::move(num), std::move(den));
    } catch (const std::domain_error&) {
        throw ParseError("rational with zero denominator: '" + std::string(text) + "'");
    } catch (const ParseError&) {
        throw ParseError("unparseable rational: '" + std::string(text) + "'");
    } catch (const std::exception&) {
        throw ParseError("unparseable rational: '" + std::string(text) + "'");
    }
}

/// Exact value of a decimal literal such as "-1.25e-3" (used when a decimal
/// matrix file is loaded under the exact backend).
inline Rational parse_decimal_rational(std::string_view text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool any = false;
    while (i < n && text[i] >= '0' && text[i] <= '9') { digits += text[i++]; any = true; }
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && text[i] >= '0' && text[i] <= '9') {
            digits += text[i++];
            ++frac_digits;
            any = true;
        }
    }
    long exp10 = 0;
    if (any && i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i == n) throw ParseError("unparseable number: '" + std::string(text) + "'");
        long e = 0;
        while (i < n && text[i] >= '0' && text[i] <= '9') e = e * 10 + (text[i++] - '0');
        exp10 = eneg ? -e : e;
    }
    if (!any || i != n) throw ParseError("unparseable number: '" + std::string(text) + "'");
    // Strip leading zeros: cpp_int reads them as an octal prefix.
    const auto first = digits.find_first_not_of('0');
    Integer num{first == std::string::npos ? std::string("0") : digits.substr(first)};
    if (neg) num = -num;
    const long down = frac_digits - exp10;
    Integer pow10 = 1;
    for (long k = 0; k < std::labs(down); ++k) pow10 *= 10;
    if (down >= 0) return make_rational(std::move(num), std::move(pow10));
    return Rational(num * pow10);
}

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Entry rendering used by the CLI: pure reals drop the imaginary part.
inline std::string format_scalar(const Rational& x) { return format_rational(x); }

inline std::string format_scalar(const Complex& x) {
    if (x.imag() == 0.0) return format_double(x.real());
    std::string s = format_double(x.real());
    s += x.imag() < 0 ? '-' : '+';
    s += format_double(std::fabs(x.imag()));
    s += 'i';
    return s;
}

} // namespace ginv
