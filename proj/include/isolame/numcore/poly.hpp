#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "isolame/numcore/scalar.hpp"

namespace isolame {

// Dense univariate polynomial, ascending coefficients. The zero polynomial is empty.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
    // x - a
    static Poly linear_root(const T& a) { return Poly(std::vector<T>{T(-a), T(1)}); }

    const std::vector<T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    Poly derivative() const {
        std::vector<T> d;
        for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<T> d(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) d[k] = -c_[k];
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> d(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) d[k] += b.c_[k];
        return Poly(std::move(d));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> d(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(d));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> d(a.c_.size());
        for (size_t k = 0; k < a.c_.size(); ++k) d[k] = s * a.c_[k];
        return Poly(std::move(d));
    }
    friend Poly operator*(const Poly& a, const T& s) { return s * a; }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
        std::vector<T> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<T> q(a.degree() - db + 1, T(0));
        T lb = b.leading();
        for (int k = a.degree(); k >= db; --k) {
            T f = r[k] / lb;
            q[k - db] = f;
            for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
            r[k] = T(0);
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        T l = leading();
        std::vector<T> d(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) d[k] = c_[k] / l;
        return Poly(std::move(d));
    }

    // Monic gcd; meaningful in exact mode.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // a(b(x))
    Poly compose(const Poly& b) const {
        Poly acc;
        for (size_t k = c_.size(); k-- > 0;) acc = acc * b + constant(c_[k]);
        return acc;
    }

    template <class U>
    Poly<U> map(U (*f)(const T&)) const {
        std::vector<U> d;
        for (const T& a : c_) d.push_back(f(a));
        return Poly<U>(std::move(d));
    }

    std::string str(const char* var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t k = c_.size(); k-- > 0;) {
            if (isolame::is_zero(c_[k])) continue;
            if (!s.empty()) s += " + ";
            s += "(" + format_scalar(c_[k]) + ")";
            if (k >= 1) s += std::string("*") + var;
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && isolame::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

// Product of (x - r) over the given roots.
template <class T>
Poly<T> poly_from_roots(std::initializer_list<T> roots) {
    Poly<T> p = Poly<T>::constant(T(1));
    for (const T& r : roots) p *= Poly<T>::linear_root(r);
    return p;
}

}  // namespace isolame
