#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <type_traits>

#include "isolame/numcore/error.hpp"

namespace isolame {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

// Proximity threshold for boundary tests in float mode (relative).
inline constexpr double kBoundaryTol = 1e-10;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline Complex to_complex(const Rational& x) { return Complex(x.get_d(), 0.0); }
inline Complex to_complex(const Complex& x) { return x; }

template <class T>
T from_int(long n, long d = 1) {
    if constexpr (is_exact_v<T>) {
        Rational r(n, d);
        r.canonicalize();
        return r;
    } else {
        return T(static_cast<double>(n) / static_cast<double>(d));
    }
}

template <class T>
T from_rational(const Rational& r) {
    if constexpr (is_exact_v<T>) {
        return r;
    } else {
        return T(r.get_d());
    }
}

// Boundary proximity: equality in exact mode, relative threshold in float mode.
template <class T>
bool coincides(const T& a, const T& b) {
    if constexpr (is_exact_v<T>) {
        return a == b;
    } else {
        return std::abs(a - b) <= kBoundaryTol * std::max(1.0, std::abs(b));
    }
}

// Treats a value as vanishing: exact zero, or tiny relative to `scale` in float mode.
template <class T>
bool negligible(const T& a, double scale = 1.0) {
    if constexpr (is_exact_v<T>) {
        return sgn(a) == 0;
    } else {
        return std::abs(a) <= kBoundaryTol * std::max(1.0, scale);
    }
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no negative zero
    return buf;
}

inline std::string format_scalar(const Rational& x) { return x.get_str(); }

inline std::string format_scalar(const Complex& z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() + 0.0, z.imag() + 0.0);
    return buf;
}

// A parsed literal `a/b`, a decimal such as `-1.25e-3`, or a complex `re+imi`.
struct ScalarLiteral {
    Rational re;
    Rational im;

    bool is_real() const { return sgn(im) == 0; }
    Complex to_complex() const { return Complex(re.get_d(), im.get_d()); }
};

namespace detail {

inline Rational parse_real_literal(const std::string& s) {
    if (s.empty()) fail(ErrorKind::InvalidArgument, "empty numeric literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) fail(ErrorKind::InvalidArgument, "bad rational literal '" + s + "'");
        std::string n = (num[0] == '+') ? num.substr(1) : num;
        std::string d = (den[0] == '+') ? den.substr(1) : den;
        for (size_t i = 0; i < n.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(n[i])) && !(i == 0 && n[i] == '-'))
                fail(ErrorKind::InvalidArgument, "bad rational literal '" + s + "'");
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(ErrorKind::InvalidArgument, "bad rational literal '" + s + "'");
        mpz_class zn(n, 10), zd(d, 10);
        if (zd == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
        Rational r(zn, zd);
        r.canonicalize();
        return r;
    }
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) fail(ErrorKind::InvalidArgument, "bad numeric literal '" + s + "'");
    long expo = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') fail(ErrorKind::InvalidArgument, "bad numeric literal '" + s + "'");
        std::string e = s.substr(i + 1);
        if (e.empty()) fail(ErrorKind::InvalidArgument, "bad exponent in '" + s + "'");
        size_t used = 0;
        try {
            expo = std::stol(e, &used);
        } catch (...) {
            fail(ErrorKind::InvalidArgument, "bad exponent in '" + s + "'");
        }
        if (used != e.size()) fail(ErrorKind::InvalidArgument, "bad exponent in '" + s + "'");
    }
    mpz_class mant(digits, 10);
    long shift = expo - frac;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift >= 0 ? Rational(mant * pow10) : Rational(mant, pow10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace detail

// Accepts `3`, `-1/4`, `0.25`, `1e-3`, `i`, `-2.5i`, `0.3+0.1i`, `1/2-3/4i`.
inline ScalarLiteral parse_scalar(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail(ErrorKind::InvalidArgument, "empty numeric literal");
    ScalarLiteral out;
    if (s.back() != 'i') {
        out.re = detail::parse_real_literal(s);
        return out;
    }
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one and not part of an exponent.
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    if (!re_part.empty()) out.re = detail::parse_real_literal(re_part);
    out.im = detail::parse_real_literal(im_part);
    return out;
}

}  // namespace isolame
