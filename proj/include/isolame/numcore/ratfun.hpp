#pragma once

#include <cmath>
#include <string>

#include "isolame/numcore/poly.hpp"

namespace isolame {

// Rational function num/den. Exact mode keeps gcd(num, den) = 1 and den monic;
// float mode keeps the representation unreduced.
template <class T>
class RatFun {
public:
    RatFun() : num_(), den_(Poly<T>::constant(T(1))) {}
    RatFun(const Poly<T>& n) : num_(n), den_(Poly<T>::constant(T(1))) {}
    RatFun(const Poly<T>& n, const Poly<T>& d) : num_(n), den_(d) {
        if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
        canonicalize();
    }
    static RatFun constant(const T& a) { return RatFun(Poly<T>::constant(a)); }
    static RatFun x() { return RatFun(Poly<T>::x()); }

    const Poly<T>& num() const { return num_; }
    const Poly<T>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // Degree of num minus degree of den; the order of the pole at infinity.
    int degree() const { return num_.is_zero() ? -1000000 : num_.degree() - den_.degree(); }

    T operator()(const T& x) const {
        T d = den_(x);
        if (pole_at(d)) fail(ErrorKind::PoleEvaluation, "evaluation at a pole");
        return num_(x) / d;
    }

    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RatFun operator-() const { return RatFun(-num_, den_, raw_tag{}); }
    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFun operator*(const T& s, const RatFun& a) { return RatFun(s * a.num_, a.den_); }
    friend RatFun operator*(const RatFun& a, const T& s) { return s * a; }
    friend RatFun operator+(const RatFun& a, const T& s) { return a + constant(s); }
    friend RatFun operator+(const T& s, const RatFun& a) { return a + constant(s); }
    friend RatFun operator-(const RatFun& a, const T& s) { return a - constant(s); }
    friend RatFun operator-(const T& s, const RatFun& a) { return constant(s) - a; }
    friend RatFun operator/(const RatFun& a, const T& s) {
        if (isolame::is_zero(s)) fail(ErrorKind::DivisionByZero, "division by zero scalar");
        return RatFun(a.num_, s * a.den_);
    }

    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
    RatFun& operator/=(const RatFun& b) { return *this = *this / b; }

    // Structural equality; for exact mode this is equality of functions.
    friend bool operator==(const RatFun& a, const RatFun& b) {
        if constexpr (is_exact_v<T>) {
            return a.num_ == b.num_ && a.den_ == b.den_;
        } else {
            return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
        }
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun pow(int n) const {
        RatFun base = n >= 0 ? *this : constant(T(1)) / *this;
        RatFun acc = constant(T(1));
        for (int k = 0; k < std::abs(n); ++k) acc *= base;
        return acc;
    }

    // f(g(x))
    RatFun compose(const RatFun& g) const {
        RatFun n, d;
        for (int k = num_.degree(); k >= 0; --k) n = n * g + constant(num_.coeff(k));
        for (int k = den_.degree(); k >= 0; --k) d = d * g + constant(den_.coeff(k));
        return n / d;
    }

    std::string str(const char* var = "x") const {
        if (is_polynomial()) return "(" + (RatFun(num_) / den_.coeff(0)).num_.str(var) + ")";
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    struct raw_tag {};
    RatFun(const Poly<T>& n, const Poly<T>& d, raw_tag) : num_(n), den_(d) {}

    static bool pole_at(const T& d) {
        if constexpr (is_exact_v<T>) {
            return sgn(d) == 0;
        } else {
            return std::abs(d) == 0.0 || !std::isfinite(std::abs(d));
        }
    }

    void canonicalize() {
        if constexpr (is_exact_v<T>) {
            if (num_.is_zero()) {
                den_ = Poly<T>::constant(T(1));
                return;
            }
            Poly<T> g = Poly<T>::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly<T>::divmod(num_, g).first;
                den_ = Poly<T>::divmod(den_, g).first;
            }
            T l = den_.leading();
            if (l != 1) {
                T inv = T(1) / l;
                num_ = inv * num_;
                den_ = inv * den_;
            }
        }
    }

    Poly<T> num_;
    Poly<T> den_;
};

}  // namespace isolame
