#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isolame/fuchs.hpp"
#include "isolame/numcore/bivariate.hpp"
#include "isolame/numcore/mat2.hpp"
#include "isolame/numcore/ratfun.hpp"
#include "isolame/numcore/roots.hpp"
#include "isolame/numcore/series.hpp"

namespace isolame {

// y^2 = x(x-1)(x-t)
template <class T>
Poly<T> legendre_cubic(const T& t) {
    return poly_from_roots<T>({T(0), T(1), t});
}

// f + g y on the Legendre curve. An element without a recorded t is a pure function of x (g = 0).
template <class T>
class CurveElement {
public:
    CurveElement() = default;
    CurveElement(int c) : f_(RatFun<T>::constant(T(c))) {}
    CurveElement(const T& c) : f_(RatFun<T>::constant(c)) {}
    CurveElement(RatFun<T> f, RatFun<T> g, std::optional<T> t) : f_(std::move(f)), g_(std::move(g)), t_(std::move(t)) {
        if (!g_.is_zero() && !t_) fail(ErrorKind::InvalidArgument, "a y-part needs the curve parameter t");
    }

    static CurveElement x_part(const RatFun<T>& f, const T& t) { return {f, RatFun<T>(), t}; }
    static CurveElement y(const T& t) { return {RatFun<T>(), RatFun<T>::constant(T(1)), t}; }
    static CurveElement x(const T& t) { return {RatFun<T>::x(), RatFun<T>(), t}; }

    const RatFun<T>& f() const { return f_; }
    const RatFun<T>& g() const { return g_; }
    const std::optional<T>& t() const { return t_; }
    bool is_zero() const { return f_.is_zero() && g_.is_zero(); }

    friend CurveElement operator+(const CurveElement& a, const CurveElement& b) {
        return {a.f_ + b.f_, a.g_ + b.g_, merge_t(a, b)};
    }
    CurveElement operator-() const { return {-f_, -g_, t_}; }
    friend CurveElement operator-(const CurveElement& a, const CurveElement& b) { return a + (-b); }
    friend CurveElement operator*(const CurveElement& a, const CurveElement& b) {
        std::optional<T> t = merge_t(a, b);
        RatFun<T> f = a.f_ * b.f_;
        if (!a.g_.is_zero() && !b.g_.is_zero()) f = f + a.g_ * b.g_ * RatFun<T>(legendre_cubic(*t));
        return {f, a.f_ * b.g_ + a.g_ * b.f_, t};
    }
    friend CurveElement operator/(const CurveElement& a, const CurveElement& b) { return a * b.inverse(); }

    // f^2 - g^2 x(x-1)(x-t)
    RatFun<T> norm() const {
        if (g_.is_zero()) return f_ * f_;
        return f_ * f_ - g_ * g_ * RatFun<T>(legendre_cubic(*t_));
    }
    CurveElement conjugate() const { return {f_, -g_, t_}; }
    // (f - g y) / norm
    CurveElement inverse() const {
        RatFun<T> n = norm();
        if (n.is_zero()) fail(ErrorKind::ZeroDivisor, "element has zero norm");
        return {f_ / n, -g_ / n, t_};
    }

    // d/dx, with dy/dx = P'(x) y / (2 P(x)).
    CurveElement derivative() const {
        if (g_.is_zero()) return {f_.derivative(), RatFun<T>(), t_};
        Poly<T> P = legendre_cubic(*t_);
        RatFun<T> ly(P.derivative(), T(2) * P);
        return {f_.derivative(), g_.derivative() + g_ * ly, t_};
    }

    friend bool operator==(const CurveElement& a, const CurveElement& b) { return a.f_ == b.f_ && a.g_ == b.g_; }
    friend bool operator!=(const CurveElement& a, const CurveElement& b) { return !(a == b); }

    std::string str() const {
        if (g_.is_zero()) return f_.str();
        return f_.str() + " + " + g_.str() + "*y";
    }

private:
    static std::optional<T> merge_t(const CurveElement& a, const CurveElement& b) {
        if (a.t_ && b.t_ && !(*a.t_ == *b.t_)) fail(ErrorKind::InvalidArgument, "elements live on different curves");
        return a.t_ ? a.t_ : b.t_;
    }

    RatFun<T> f_, g_;
    std::optional<T> t_;
};

template <class T>
bool is_zero(const CurveElement<T>& u) {
    return u.is_zero();
}

enum class CurveOp { Add, Mul, Inv };

template <class T>
CurveElement<T> curve_arith(CurveOp op, const CurveElement<T>& u, const CurveElement<T>& v = CurveElement<T>()) {
    switch (op) {
        case CurveOp::Add: return u + v;
        case CurveOp::Mul: return u * v;
        case CurveOp::Inv: return u.inverse();
    }
    fail(ErrorKind::InvalidArgument, "unknown curve operation");
}

using CurveMat = Mat2<CurveElement<Rational>>;

template <class T>
Mat2<CurveElement<T>> lift_matrix(const Mat2<T>& M) {
    return {CurveElement<T>(M.a), CurveElement<T>(M.b), CurveElement<T>(M.c), CurveElement<T>(M.d)};
}

template <class T>
Mat2<CurveElement<T>> curve_mat_inverse(const Mat2<CurveElement<T>>& M) {
    CurveElement<T> di = M.det().inverse();
    return {M.d * di, -(M.b * di), -(M.c * di), M.a * di};
}

template <class T>
Mat2<CurveElement<T>> curve_mat_derivative(const Mat2<CurveElement<T>>& M) {
    return {M.a.derivative(), M.b.derivative(), M.c.derivative(), M.d.derivative()};
}

// The four ramification points and affine points (x0, y0) with y0 != 0.
enum class PointKind { Omega0, Omega1, OmegaT, OmegaInf, Affine };

template <class T>
struct CurvePoint {
    PointKind kind = PointKind::Omega0;
    T x0{0}, y0{0};

    static CurvePoint omega(int i) {
        static constexpr PointKind k[4] = {PointKind::Omega0, PointKind::Omega1, PointKind::OmegaT, PointKind::OmegaInf};
        return {k[i], T(0), T(0)};
    }
    static CurvePoint affine(const T& x0, const T& y0) { return {PointKind::Affine, x0, y0}; }
    int index() const { return static_cast<int>(kind); }
};

inline const char* point_name(PointKind k) {
    switch (k) {
        case PointKind::Omega0: return "omega0";
        case PointKind::Omega1: return "omega1";
        case PointKind::OmegaT: return "omegat";
        case PointKind::OmegaInf: return "omegainf";
        case PointKind::Affine: return "affine";
    }
    return "?";
}

namespace detail {

// sqrt(u) for u = 1 + O(s).
template <class T>
Laurent<T> sqrt_unit(const Laurent<T>& u) {
    if (u.valuation() != 0 || !(u.coeff(0) == T(1))) fail(ErrorKind::InvalidArgument, "sqrt_unit needs u(0) = 1");
    const int n = u.precision();
    std::vector<T> r(n, T(0));
    r[0] = T(1);
    for (int k = 1; k < n; ++k) {
        T acc = u.coeff(k);
        for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
        r[k] = acc / T(2);
    }
    return Laurent<T>(0, std::move(r), n);
}

}  // namespace detail

// x(s), y(s) and dx/ds in the local parameter s at a curve point.
template <class T>
struct LocalChart {
    PointKind kind;
    T center{0};  // x at the point (finite points)
    Laurent<T> z;   // x - center, or 1/x at omega_inf
    Laurent<T> y;
    Laurent<T> dx;  // dx/ds
};

// s = y at omega_i (x - i = y^2 * unit); x = s^-2 and y s^3 -> 1 at omega_inf; s = x - x0 at affine points.
template <class T>
LocalChart<T> local_chart(const CurvePoint<T>& pt, const T& t, int prec) {
    LocalChart<T> C;
    C.kind = pt.kind;
    const Poly<T> P = legendre_cubic(t);
    if (pt.kind == PointKind::OmegaInf) {
        // y = s^-3 sqrt((1 - s^2)(1 - t s^2)); 1/x = s^2
        Laurent<T> u(0, {T(1), T(0), T(-(T(1) + t)), T(0), t}, prec + 8);
        C.z = Laurent<T>::monomial(2, prec + 8);
        C.y = Laurent<T>::monomial(-3, prec + 8) * detail::sqrt_unit(u);
        C.dx = Laurent<T>(-3, {T(-2)}, prec + 8);
        return C;
    }
    if (pt.kind == PointKind::Affine) {
        if (is_zero(pt.y0) || !(pt.y0 * pt.y0 == P(pt.x0)))
            fail(ErrorKind::UnsupportedPoint, "affine point must satisfy y0^2 = P(x0) with y0 != 0");
        C.center = pt.x0;
        C.z = Laurent<T>::monomial(1, prec + 8);
        Laurent<T> q = expand_at(RatFun<T>(P), pt.x0, prec + 8);
        C.y = pt.y0 * detail::sqrt_unit((T(1) / (pt.y0 * pt.y0)) * q);
        C.dx = Laurent<T>::constant(T(1), prec + 8);
        return C;
    }
    const T a = pt.kind == PointKind::Omega0 ? T(0) : (pt.kind == PointKind::Omega1 ? T(1) : t);
    C.center = a;
    // x - a = s^2 / Q(x) with Q = P / (x - a); fixed point iteration gains two orders per pass.
    Poly<T> Q = Poly<T>::divmod(P, Poly<T>::linear_root(a)).first;
    const int N = prec + 8;
    Laurent<T> h = expand_at(RatFun<T>(Poly<T>::constant(T(1)), Q), a, N);
    Laurent<T> s2 = Laurent<T>::monomial(2, N);
    Laurent<T> z = (h.coeff(0) * s2).truncate(N);
    for (int it = 0; it < N / 2 + 1; ++it) z = (s2 * h.compose(z)).truncate(N);
    C.z = z;
    C.y = Laurent<T>::monomial(1, N);
    C.dx = z.derivative();
    return C;
}

// f(x(s)) for a rational function f, with precision at least `prec`.
template <class T>
Laurent<T> expand_ratfun(const RatFun<T>& f, const LocalChart<T>& C, int prec) {
    if (f.is_zero()) return Laurent<T>::zero(prec);
    if (C.kind == PointKind::OmegaInf) return expand_at_infinity(f, prec).compose(C.z);
    return expand_at(f, C.center, prec + 4).compose(C.z);
}

template <class T>
Laurent<T> local_expand_function(const CurveElement<T>& u, const LocalChart<T>& C, int prec) {
    Laurent<T> r = expand_ratfun(u.f(), C, prec + 8);
    if (!u.g().is_zero()) r = r + expand_ratfun(u.g(), C, prec + 8) * C.y;
    return r.truncate(prec);
}

// Series of u in the local parameter, O(s^order). Fails if the chart precision runs short.
template <class T>
Laurent<T> local_expand(const CurveElement<T>& u, const CurvePoint<T>& pt, const T& t, int order) {
    for (int margin = 8; margin <= 128; margin *= 2) {
        LocalChart<T> C = local_chart(pt, t, order + margin);
        Laurent<T> r = local_expand_function(u, C, order + margin);
        if (r.precision() >= order) return r.truncate(order);
    }
    fail(ErrorKind::NonConvergence, "local expansion precision could not be reached");
}

// Series of u dx / ds.
template <class T>
Laurent<T> local_expand_form(const CurveElement<T>& u, const CurvePoint<T>& pt, const T& t, int order) {
    for (int margin = 8; margin <= 128; margin *= 2) {
        LocalChart<T> C = local_chart(pt, t, order + margin);
        Laurent<T> r = local_expand_function(u, C, order + margin) * C.dx;
        if (r.precision() >= order) return r.truncate(order);
    }
    fail(ErrorKind::NonConvergence, "local expansion precision could not be reached");
}

// Connection d + Omega dx on the curve. Near the point omega_i the connection matrix is
// g_i Omega g_i^-1 + g_i' g_i^-1 - twist_i Id, where g_i is the accumulated local gauge.
template <class T>
struct CurveConnection {
    T t{0};
    Mat2<CurveElement<T>> Omega;
    std::array<Mat2<CurveElement<T>>, 4> gauge;
    std::array<CurveElement<T>, 4> twist;
    std::string chart_label = "pullback";

    Mat2<CurveElement<T>> chart_matrix(int i) const {
        const auto& g = gauge[i];
        auto gi = curve_mat_inverse(g);
        auto M = g * Omega * gi + curve_mat_derivative(g) * gi;
        M.a = M.a - twist[i];
        M.d = M.d - twist[i];
        return M;
    }
};

template <class T>
struct LocalData {
    PointKind point;
    int pole_order = 0;
    std::optional<std::pair<T, T>> residue_eigenvalues;  // present when pole_order <= 1
    Mat2<T> residue;
};

template <class T>
MatSeries<T> local_matrix(const Mat2<CurveElement<T>>& M, const CurvePoint<T>& pt, const T& t, int order) {
    return {local_expand_form(M.a, pt, t, order), local_expand_form(M.b, pt, t, order),
            local_expand_form(M.c, pt, t, order), local_expand_form(M.d, pt, t, order)};
}

template <class T>
std::pair<T, T> eigenvalues2(const Mat2<T>& R) {
    if constexpr (is_exact_v<T>) {
        return poly_roots2_exact(T(1), T(-R.trace()), R.det());
    } else {
        auto r = poly_roots2(Complex(1), -R.trace(), R.det());
        return {r[0], r[1]};
    }
}

template <class T>
LocalData<T> local_data(const Mat2<CurveElement<T>>& M, const CurvePoint<T>& pt, const T& t) {
    MatSeries<T> S = local_matrix(M, pt, t, 1);
    LocalData<T> d;
    d.point = pt.kind;
    d.pole_order = std::max(0, -S.valuation());
    if (d.pole_order <= 1) {
        d.residue = S.coeff(-1);
        d.residue_eigenvalues = eigenvalues2(d.residue);
    }
    return d;
}

template <class T>
LocalData<T> local_data(const CurveConnection<T>& C, int i) {
    return local_data(C.chart_matrix(i), CurvePoint<T>::omega(i), C.t);
}

// Omega(x) dx viewed on the curve; all y-parts vanish.
template <class T>
CurveConnection<T> pullback_connection(const FuchsianSystem<T>& S) {
    CurveConnection<T> C;
    C.t = S.t;
    Mat2<CurveElement<T>> Om;
    for (int i = 0; i < 3; ++i) {
        RatFun<T> pole(Poly<T>::constant(T(1)), Poly<T>::linear_root(S.pole(i)));
        const Mat2<T>& A = S.residue(i);
        Om = Om + Mat2<CurveElement<T>>{CurveElement<T>::x_part(A.a * pole, S.t), CurveElement<T>::x_part(A.b * pole, S.t),
                                        CurveElement<T>::x_part(A.c * pole, S.t), CurveElement<T>::x_part(A.d * pole, S.t)};
    }
    C.Omega = Om;
    for (auto& g : C.gauge) g = Mat2<CurveElement<T>>::identity();
    for (auto& z : C.twist) z = CurveElement<T>(0);
    return C;
}

// Function with a simple zero at omega_i used by the elementary transformation.
template <class T>
CurveElement<T> uniformizer(int i, const T& t) {
    if (i == 3) return CurveElement<T>::x(t) / CurveElement<T>::y(t);
    return CurveElement<T>::y(t);
}

// elm+ at omega_i along l: frame change sending l to (0:1), then the gauge diag(1, u_i).
template <class T>
CurveConnection<T> apply_elm_at(const CurveConnection<T>& C, int i, const PLine<T>& l) {
    LocalData<T> d = local_data(C, i);
    if (d.pole_order > 1) fail(ErrorKind::NonEigenline, "connection is not logarithmic at the point");
    Vec2<T> v = d.residue * Vec2<T>{l.u0, l.u1};
    if (!same_point(PLine<T>{v.x0, v.x1}, l) && !(is_zero(v.x0) && is_zero(v.x1)))
        fail(ErrorKind::NonEigenline, "line is not an eigenline of the residue");
    CurveConnection<T> R = C;
    Mat2<CurveElement<T>> F = lift_matrix(detail::frame_to_e2(l));
    Mat2<CurveElement<T>> D = Mat2<CurveElement<T>>::diag(CurveElement<T>(1), uniformizer(i, C.t));
    R.gauge[i] = D * F * C.gauge[i];
    R.chart_label = C.chart_label + "+elm" + std::to_string(i);
    return R;
}

// Subtract half the trace in every chart; the result is trace free.
template <class T>
CurveConnection<T> twist_by_zeta(const CurveConnection<T>& C) {
    CurveConnection<T> R = C;
    for (int i = 0; i < 4; ++i) {
        CurveConnection<T> B = C;
        B.twist[i] = CurveElement<T>(0);
        R.twist[i] = CurveElement<T>(T(T(1) / T(2))) * B.chart_matrix(i).trace();
    }
    R.chart_label = C.chart_label + "+zeta";
    return R;
}

struct LamePullback {
    CurveConnection<Rational> connection;
    std::array<LocalData<Rational>, 4> local;
};

// Steps: pull back, elm+ at the four ramification points along the eigenlines of -theta_i, twist.
inline LamePullback lame_pullback(const PviParams<Rational>& P, const PhasePoint<Rational>& pt) {
    const Rational half(1, 2);
    if (P.k0 != half || P.k1 != half || P.kt != half)
        fail(ErrorKind::NotLameSpecial, "finite exponents must all be 1/2");
    FuchsianSystem<Rational> S = system_from_pq(P, pt);
    CurveConnection<Rational> C = pullback_connection(S);
    for (int i = 0; i < 4; ++i) {
        LocalData<Rational> d = local_data(C, i);
        // eigenline for -theta_i of the residue 2 A_i
        Mat2<Rational> K = d.residue + Mat2<Rational>::diag(S.theta[i], S.theta[i]);
        C = apply_elm_at(C, i, kernel_line(K));
    }
    C = twist_by_zeta(C);
    LamePullback out{C, {}};
    for (int i = 0; i < 4; ++i) out.local[i] = local_data(C, i);
    return out;
}

// Projective value (u0 : u1) = u1/u0.
template <class T>
PLine<T> tu_from_cross_ratio(const PLine<T>& c, const T& t) {
    // c = u1/u0: lambda = t (c - 1) / (c - t)
    return {c.u1 - t * c.u0, t * (c.u1 - c.u0)};
}

template <class T>
T tu_from_pq(const PviParams<T>& P, const PhasePoint<T>& pt) {
    if (is_zero(pt.p)) fail(ErrorKind::ZeroMomentum, "p = 0: lambda is infinite");
    return pt.q + (P.rho + P.kinf) / pt.p;
}

enum class BundleCase { Trivial, OminusOplus };
enum class TuKind { Decomposable, UndecomposableE0, TrivialBundle };

inline const char* tu_kind_name(TuKind k) {
    switch (k) {
        case TuKind::Decomposable: return "decomposable";
        case TuKind::UndecomposableE0: return "undecomposable_E0";
        case TuKind::TrivialBundle: return "trivial";
    }
    return "?";
}

template <class T>
struct TuClass {
    TuKind kind;
    std::optional<PLine<T>> lambda;  // lambda = infinity stands for the trivial bundle
};

// lines_on_common_section: in the O(-1)+O(1) case, whether all four lines lie on one section of the +2 family.
template <class T>
TuClass<T> classify_bundle(const ParabolicData<T>& L, const T& t, BundleCase bundle_case,
                           bool lines_on_common_section = false) {
    if (bundle_case == BundleCase::OminusOplus) {
        if (lines_on_common_section) return {TuKind::TrivialBundle, PLine<T>::infinity()};
        return {TuKind::UndecomposableE0, std::nullopt};
    }
    const std::array<const PLine<T>*, 4> l{&L.l0, &L.l1, &L.lt, &L.linf};
    std::array<int, 4> cls{0, 1, 2, 3};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            if (same_point(*l[i], *l[j])) {
                cls[i] = cls[j];
                break;
            }
    std::array<int, 4> size{0, 0, 0, 0};
    for (int c : cls) ++size[c];
    int pairs = 0;
    for (int s : size) {
        if (s >= 3) fail(ErrorKind::InvalidConfiguration, "three parabolic lines coincide");
        if (s == 2) ++pairs;
    }
    if (pairs == 2) return {TuKind::TrivialBundle, PLine<T>::infinity()};
    if (pairs == 1) return {TuKind::UndecomposableE0, std::nullopt};
    PLine<T> c = cross_ratio(L);
    if (same_point(c, PLine<T>::affine(t))) return {TuKind::UndecomposableE0, std::nullopt};
    return {TuKind::Decomposable, tu_from_cross_ratio(c, t)};
}

// F = ((c-t)x - t(c-1)) w^2 + 2(t-1)c x w - c x((c-1)x - (c-t))
template <class T>
BivariatePoly<T> conic_22(const T& c, const T& t) {
    if (is_zero(c) || coincides(c, T(1)) || coincides(c, t))
        fail(ErrorKind::DegenerateCrossRatio, "c must avoid 0, 1, t");
    BivariatePoly<T> F;
    F.w_coeffs = {Poly<T>({T(0), T(c * (c - t)), T(-c * (c - T(1)))}), Poly<T>({T(0), T(T(2) * (t - T(1)) * c)}),
                  Poly<T>({T(-t * (c - T(1))), T(c - t)})};
    return F;
}

}  // namespace isolame
