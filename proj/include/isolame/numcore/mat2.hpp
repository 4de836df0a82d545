#pragma once

#include <array>
#include <cmath>

#include "isolame/numcore/scalar.hpp"

namespace isolame {

template <class T>
struct Vec2 {
    T x0{0}, x1{0};
};

// 2x2 matrix [[a, b], [c, d]].
template <class T>
struct Mat2 {
    T a{0}, b{0}, c{0}, d{0};

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    static Mat2 diag(const T& p, const T& q) { return {p, T(0), T(0), q}; }

    T trace() const { return a + d; }
    T det() const { return a * d - b * c; }

    Mat2 inverse() const {
        T dt = det();
        if (isolame::is_zero(dt)) fail(ErrorKind::DivisionByZero, "singular 2x2 matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    // Adjugate; equals the inverse for det = 1.
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 transpose() const { return {a, c, b, d}; }

    Vec2<T> operator*(const Vec2<T>& v) const { return {a * v.x0 + b * v.x1, c * v.x0 + d * v.x1}; }

    friend Mat2 operator+(const Mat2& m, const Mat2& n) { return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d}; }
    friend Mat2 operator-(const Mat2& m, const Mat2& n) { return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d}; }
    friend Mat2 operator-(const Mat2& m) { return {-m.a, -m.b, -m.c, -m.d}; }
    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Mat2 operator*(const T& s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend Mat2 operator*(const Mat2& m, const T& s) { return s * m; }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
};

using CMat2 = Mat2<Complex>;

inline double max_abs(const CMat2& m) {
    return std::max(std::max(std::abs(m.a), std::abs(m.b)), std::max(std::abs(m.c), std::abs(m.d)));
}
inline double max_abs_diff(const CMat2& m, const CMat2& n) { return max_abs(m - n); }

inline CMat2 to_complex(const Mat2<Rational>& m) {
    return {to_complex(m.a), to_complex(m.b), to_complex(m.c), to_complex(m.d)};
}
inline CMat2 to_complex(const CMat2& m) { return m; }

// m n m^-1 n^-1
template <class T>
Mat2<T> commutator(const Mat2<T>& m, const Mat2<T>& n) {
    return m * n * m.inverse() * n.inverse();
}

}  // namespace isolame
