#pragma once

#include <algorithm>
#include <climits>
#include <vector>

#include "isolame/numcore/mat2.hpp"
#include "isolame/numcore/ratfun.hpp"

namespace isolame {

// Truncated Laurent series  sum_{k} c[k] z^(val + k) + O(z^prec).
template <class T>
class Laurent {
public:
    Laurent() : val_(0), prec_(INT_MAX / 4) {}
    Laurent(int val, std::vector<T> c, int prec) : val_(val), c_(std::move(c)), prec_(prec) { normalize(); }

    static Laurent zero(int prec) { return Laurent(prec, {}, prec); }
    static Laurent constant(const T& a, int prec) { return Laurent(0, {a}, prec); }
    // z^k exactly, truncated at prec
    static Laurent monomial(int k, int prec) { return Laurent(k, {T(1)}, prec); }

    int valuation() const { return c_.empty() ? prec_ : val_; }
    int precision() const { return prec_; }
    bool is_zero() const { return c_.empty(); }

    T coeff(int k) const {
        int i = k - val_;
        if (k >= prec_) fail(ErrorKind::InvalidArgument, "series coefficient beyond precision");
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0);
    }

    Laurent truncate(int prec) const {
        Laurent r = *this;
        r.prec_ = std::min(prec_, prec);
        r.normalize();
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        int prec = std::min(a.prec_, b.prec_);
        if (a.is_zero()) return b.truncate(prec);
        if (b.is_zero()) return a.truncate(prec);
        int v = std::min(a.val_, b.val_);
        std::vector<T> c(std::max(0, prec - v), T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int k = a.val_ + static_cast<int>(i);
            if (k < prec) c[k - v] += a.c_[i];
        }
        for (size_t i = 0; i < b.c_.size(); ++i) {
            int k = b.val_ + static_cast<int>(i);
            if (k < prec) c[k - v] += b.c_[i];
        }
        return Laurent(v, std::move(c), prec);
    }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        int va = a.valuation(), vb = b.valuation();
        int prec = std::min(va + b.prec_, vb + a.prec_);
        if (a.is_zero() || b.is_zero()) return zero(prec);
        int v = va + vb;
        std::vector<T> c(std::max(0, prec - v), T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int k = static_cast<int>(i + j);
                if (v + k >= prec) break;
                c[k] += a.c_[i] * b.c_[j];
            }
        }
        return Laurent(v, std::move(c), prec);
    }
    friend Laurent operator*(const T& s, const Laurent& a) {
        Laurent r = a;
        for (auto& x : r.c_) x = s * x;
        r.normalize();
        return r;
    }

    // 1/a; requires a nonzero leading coefficient.
    Laurent inverse() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of a series with no known nonzero term");
        int n = prec_ - val_;
        std::vector<T> r(n, T(0));
        T inv0 = T(1) / c_[0];
        r[0] = inv0;
        for (int k = 1; k < n; ++k) {
            T s(0);
            for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) s += c_[j] * r[k - j];
            r[k] = -s * inv0;
        }
        return Laurent(-val_, std::move(r), -val_ + n);
    }
    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

    Laurent derivative() const {
        std::vector<T> c(c_.size(), T(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * T(static_cast<long>(val_ + static_cast<int>(i)));
        return Laurent(val_ - 1, std::move(c), prec_ - 1);
    }

    Laurent pow(int n) const {
        Laurent base = n >= 0 ? *this : inverse();
        Laurent acc = constant(T(1), base.prec_ - base.valuation());
        for (int k = 0; k < std::abs(n); ++k) acc = acc * base;
        return acc;
    }

    // f(s(z)) for s of positive valuation.
    Laurent compose(const Laurent& s) const {
        if (s.valuation() <= 0) fail(ErrorKind::InvalidArgument, "inner series must vanish at 0");
        int vs = s.valuation();
        // Relative precision available in s.
        int rel = s.prec_ - vs;
        // The term z^k of f contributes from order k*vs; the truncation O(z^prec_) of f becomes O(z^(prec_*vs)).
        int lo = is_zero() ? prec_ : val_;
        int prec = std::min(prec_ * vs, lo * vs + rel);
        Laurent acc = zero(prec);
        if (is_zero()) return acc;
        Laurent p = s.pow(lo).truncate(prec);
        for (size_t i = 0; i < c_.size(); ++i) {
            int k = val_ + static_cast<int>(i);
            if (k * vs >= prec) break;
            if (!isolame::is_zero(c_[i])) acc = acc + (c_[i] * p).truncate(prec);
            p = (p * s).truncate(prec);
        }
        return acc.truncate(prec);
    }

private:
    void normalize() {
        // drop terms at or beyond precision, then leading zeros
        int keep = std::max(0, prec_ - val_);
        if (static_cast<int>(c_.size()) > keep) c_.resize(keep);
        size_t lead = 0;
        while (lead < c_.size() && isolame::is_zero(c_[lead])) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<int>(lead);
        }
        while (!c_.empty() && isolame::is_zero(c_.back())) c_.pop_back();
    }

    int val_;
    std::vector<T> c_;
    int prec_;
};

// Taylor/Laurent expansion of r(a + z) to O(z^prec).
template <class T>
Laurent<T> expand_at(const RatFun<T>& r, const T& a, int prec) {
    auto shift = [&](const Poly<T>& p) {
        Poly<T> s = p.compose(Poly<T>(std::vector<T>{a, T(1)}));
        std::vector<T> c = s.coeffs();
        return c;
    };
    std::vector<T> n = shift(r.num()), d = shift(r.den());
    int vd = 0;
    while (vd < static_cast<int>(d.size()) && isolame::is_zero(d[vd])) ++vd;
    Laurent<T> N(0, n, prec + vd + 1), D(0, d, prec + 2 * vd + 1);
    return (N / D).truncate(prec);
}

// Expansion at infinity in w = 1/x: r(1/w) to O(w^prec).
template <class T>
Laurent<T> expand_at_infinity(const RatFun<T>& r, int prec) {
    int dn = r.num().degree(), dd = r.den().degree();
    auto rev = [](const Poly<T>& p, int deg) {
        std::vector<T> c(std::max(0, deg + 1), T(0));
        for (int k = 0; k <= p.degree(); ++k) c[deg - k] = p.coeff(k);
        return c;
    };
    if (r.is_zero()) return Laurent<T>::zero(prec);
    // r(1/w) = w^(dd - dn) * rev(num)(w) / rev(den)(w)
    int margin = prec - (dd - dn) + 1;
    Laurent<T> N(0, rev(r.num(), dn), std::max(margin, 1)), D(0, rev(r.den(), dd), std::max(margin, 1));
    Laurent<T> q = N / D;
    return (Laurent<T>::monomial(dd - dn, prec + std::abs(dd - dn) + margin) * q).truncate(prec);
}

// 2x2 matrix of Laurent series.
template <class T>
struct MatSeries {
    Laurent<T> a, b, c, d;

    int valuation() const { return std::min({a.valuation(), b.valuation(), c.valuation(), d.valuation()}); }
    Mat2<T> coeff(int k) const { return {a.coeff(k), b.coeff(k), c.coeff(k), d.coeff(k)}; }
    MatSeries truncate(int prec) const { return {a.truncate(prec), b.truncate(prec), c.truncate(prec), d.truncate(prec)}; }
    Laurent<T> trace() const { return a + d; }
    Laurent<T> det() const { return a * d - b * c; }

    friend MatSeries operator+(const MatSeries& m, const MatSeries& n) { return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d}; }
    friend MatSeries operator-(const MatSeries& m, const MatSeries& n) { return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d}; }
    friend MatSeries operator*(const MatSeries& m, const MatSeries& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    static MatSeries from_constant(const Mat2<T>& M, int prec) {
        return {Laurent<T>::constant(M.a, prec), Laurent<T>::constant(M.b, prec), Laurent<T>::constant(M.c, prec),
                Laurent<T>::constant(M.d, prec)};
    }
    MatSeries inverse() const {
        Laurent<T> id = det().inverse();
        return {d * id, -(b * id), -(c * id), a * id};
    }
    MatSeries derivative() const { return {a.derivative(), b.derivative(), c.derivative(), d.derivative()}; }
};

}  // namespace isolame
