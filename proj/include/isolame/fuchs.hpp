#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "isolame/numcore/mat2.hpp"
#include "isolame/numcore/ratfun.hpp"
#include "isolame/numcore/roots.hpp"
#include "isolame/numcore/series.hpp"
#include "isolame/pvi.hpp"

namespace isolame {

// Homogeneous point (u0 : u1) of P^1; affine coordinate u1/u0, infinite when u0 = 0.
template <class T>
struct PLine {
    T u0{1}, u1{0};

    static PLine affine(const T& y) { return {T(1), y}; }
    static PLine infinity() { return {T(0), T(1)}; }
    bool is_infinite() const { return isolame::is_zero(u0); }
    T value() const {
        if (is_infinite()) fail(ErrorKind::AtInfinity, "projective point is at infinity");
        return u1 / u0;
    }
};

// u0 v1 - u1 v0; vanishes iff the points coincide.
template <class T>
T bracket(const PLine<T>& u, const PLine<T>& v) {
    return u.u0 * v.u1 - u.u1 * v.u0;
}

template <class T>
bool same_point(const PLine<T>& u, const PLine<T>& v) {
    T b = bracket(u, v);
    if constexpr (is_exact_v<T>) {
        return isolame::is_zero(b);
    } else {
        double s = std::max(std::abs(u.u0) + std::abs(u.u1), 1e-300) * std::max(std::abs(v.u0) + std::abs(v.u1), 1e-300);
        return std::abs(b) <= kBoundaryTol * s;
    }
}

// dY/dx = (A0/x + A1/(x-1) + At/(x-t)) Y, with A_inf = -(A0 + A1 + At).
template <class T>
struct FuchsianSystem {
    T t{0};
    Mat2<T> A0, A1, At;
    std::array<T, 4> theta{};  // (theta0, theta1, thetat, thetainf)

    Mat2<T> Ainf() const { return -(A0 + A1 + At); }
    const Mat2<T>& residue(int i) const { return i == 0 ? A0 : (i == 1 ? A1 : At); }
    Mat2<T>& residue(int i) { return i == 0 ? A0 : (i == 1 ? A1 : At); }
    // Pole position for index 0, 1, 2 (= t).
    T pole(int i) const { return i == 0 ? T(0) : (i == 1 ? T(1) : t); }
};

template <class T>
struct ParabolicData {
    PLine<T> l0, l1, lt, linf;
};

// Bold p = q(q-1)(q-t)p
template <class T>
T bold_p(const PhasePoint<T>& pt) {
    return pt.q * (pt.q - T(1)) * (pt.q - pt.t) * pt.p;
}

template <class T>
FuchsianSystem<T> system_from_pq(const PviParams<T>& P, const PhasePoint<T>& pt) {
    check_boundary(pt.t, pt.q);
    const T& t = pt.t;
    const T& q = pt.q;
    const T bp = bold_p(pt);
    const T rk = P.rho + P.kinf;
    const T one(1), two(2);
    FuchsianSystem<T> S;
    S.t = t;
    S.theta = {P.theta0(), P.theta1(), P.thetat(), P.thetainf()};
    std::array<T, 3> a{bp / t - P.k0 / two, -bp / (t - one) - (q - one) * rk / (t - one) - P.k1 / two,
                       bp / (t * (t - one)) + (q - t) * rk / (t - one) - P.kt / two};
    std::array<T, 3> b{-q / t, (q - one) / (t - one), -(q - t) / (t * (t - one))};
    for (int i = 0; i < 3; ++i) {
        T c = (S.theta[i] * S.theta[i] / T(4) - a[i] * a[i]) / b[i];
        S.residue(i) = {a[i], b[i], c, -a[i]};
    }
    return S;
}

template <class T>
struct PQTheta {
    T q, p;
    std::array<T, 4> theta;
};

template <class T>
PQTheta<T> pq_from_system(const FuchsianSystem<T>& S) {
    const T& t = S.t;
    const T one(1), two(2);
    T den = t * S.A0.b + (t - one) * S.A1.b;
    if (negligible(den, magnitude(t * S.A0.b) + magnitude((t - one) * S.A1.b)))
        fail(ErrorKind::DegenerateNormalization, "t b0 + (t-1) b1 vanishes");
    PQTheta<T> r;
    r.theta = S.theta;
    r.q = t * S.A0.b / den;
    check_boundary(t, r.q);
    r.p = (S.A0.a + S.theta[0] / two) / r.q + (S.A1.a + S.theta[1] / two) / (r.q - one) +
          (S.At.a + S.theta[2] / two) / (r.q - t);
    return r;
}

template <class T>
ParabolicData<T> parabolic_lines(const PviParams<T>& P, const PhasePoint<T>& pt) {
    check_boundary(pt.t, pt.q);
    const T bp = bold_p(pt);
    const T rk = P.rho + P.kinf;
    ParabolicData<T> L;
    L.l0 = PLine<T>::affine(bp / pt.q);
    L.l1 = PLine<T>::affine(bp / (pt.q - T(1)) + rk);
    L.lt = PLine<T>::affine(bp / (pt.q - pt.t) + rk * pt.t);
    L.linf = PLine<T>::infinity();
    return L;
}

// Kernel of a singular 2x2 matrix as a projective point.
template <class T>
PLine<T> kernel_line(const Mat2<T>& M) {
    // Use the row of larger size for stability; both rows are proportional.
    if constexpr (is_exact_v<T>) {
        if (!isolame::is_zero(M.a) || !isolame::is_zero(M.b)) return {M.b, -M.a};
        if (!isolame::is_zero(M.c) || !isolame::is_zero(M.d)) return {M.d, -M.c};
    } else {
        double r1 = std::abs(M.a) + std::abs(M.b), r2 = std::abs(M.c) + std::abs(M.d);
        if (r1 >= r2 && r1 > 0) return {M.b, -M.a};
        if (r2 > 0) return {M.d, -M.c};
    }
    fail(ErrorKind::DegenerateEigenline, "zero matrix has no distinguished kernel");
}

// Names of coinciding pairs among (l0, l1, lt, linf).
template <class T>
std::vector<std::string> coincident_pairs(const ParabolicData<T>& L) {
    const std::array<const PLine<T>*, 4> l{&L.l0, &L.l1, &L.lt, &L.linf};
    const std::array<const char*, 4> n{"l0", "l1", "lt", "linf"};
    std::vector<std::string> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (same_point(*l[i], *l[j])) out.push_back(std::string(n[i]) + "=" + n[j]);
    return out;
}

// (lt - l0)(l1 - linf) / ((l1 - l0)(lt - linf)) as a projective value.
template <class T>
PLine<T> cross_ratio(const ParabolicData<T>& L) {
    auto pairs = coincident_pairs(L);
    if (!pairs.empty()) {
        std::string w;
        for (auto& s : pairs) w += (w.empty() ? "" : ",") + s;
        fail(ErrorKind::CoincidentLines, w);
    }
    T num = bracket(L.l0, L.lt) * bracket(L.linf, L.l1);
    T den = bracket(L.l0, L.l1) * bracket(L.linf, L.lt);
    return {den, num};
}

// Closed form t((q-1)p + rho + kinf)/((q-t)p + rho + kinf).
template <class T>
PLine<T> cross_ratio_closed_form(const PviParams<T>& P, const PhasePoint<T>& pt) {
    const T rk = P.rho + P.kinf;
    return {(pt.q - pt.t) * pt.p + rk, pt.t * ((pt.q - T(1)) * pt.p + rk)};
}

// u'' + f u' + g u = 0
template <class T>
struct ScalarEquation {
    RatFun<T> f, g;
};

template <class T>
ScalarEquation<T> scalar_from_pq(const PviParams<T>& P, const PhasePoint<T>& pt) {
    check_boundary(pt.t, pt.q);
    using R = RatFun<T>;
    const T& t = pt.t;
    const T& q = pt.q;
    const T one(1);
    auto inv = [](const T& a) { return R(Poly<T>::constant(T(1)), Poly<T>::linear_root(a)); };
    const T H = hamiltonian(P, pt);
    ScalarEquation<T> E;
    E.f = (one - P.k0) * inv(T(0)) + (one - P.k1) * inv(one) + (one - P.kt) * inv(t) - inv(q);
    R inner = (-(t * (t - one) * H)) * inv(t) + (q * (q - one) * pt.p) * inv(q) + R::constant(P.rho * (P.kinf + P.rho));
    E.g = inner * inv(T(0)) * inv(one);
    return E;
}

// Residue at x = a of a rational function with at most a simple pole there.
template <class T>
T residue_at(const RatFun<T>& r, const T& a) {
    Laurent<T> s = expand_at(r, a, 1);
    if (s.valuation() < -1) fail(ErrorKind::InvalidArgument, "pole of order > 1");
    return s.coeff(-1);
}

enum class RiccatiLevel { F2, F1, F0 };

inline const char* level_name(RiccatiLevel l) {
    return l == RiccatiLevel::F2 ? "F2" : (l == RiccatiLevel::F1 ? "F1" : "F0");
}

// Singular point on a fibre x = pole. `chart_weight` k means the y-coordinate is y / x^k at x = infinity.
template <class T>
struct SingularPoint {
    std::string name;
    bool x_infinite = false;
    T x{0};
    PLine<T> y;
    int chart_weight = 0;
};

// dy/dx = A2(x) y^2 + A1(x) y + A0(x)
template <class T>
struct RiccatiModel {
    RiccatiLevel level = RiccatiLevel::F1;
    RatFun<T> A2, A1, A0;
    std::vector<SingularPoint<T>> points;

    const SingularPoint<T>& point(const std::string& n) const {
        for (const auto& s : points)
            if (s.name == n) return s;
        fail(ErrorKind::InvalidArgument, "no singular point named " + n);
    }
};

namespace detail {

template <class T>
RatFun<T> simple_pole(const T& a) {
    return RatFun<T>(Poly<T>::constant(T(1)), Poly<T>::linear_root(a));
}

// sign * (m y - n)(m y - n + k) / (d (x - a)) added to (A2, A1, A0)
template <class T>
void add_quadratic_term(RiccatiModel<T>& M, const std::type_identity_t<T>& sign, const std::type_identity_t<T>& m,
                        const std::type_identity_t<T>& n, const std::type_identity_t<T>& k,
                        const std::type_identity_t<T>& d, const std::type_identity_t<T>& a) {
    RatFun<T> w = (sign / d) * simple_pole(a);
    M.A2 += (m * m) * w;
    M.A1 += (m * (k - T(2) * n)) * w;
    M.A0 += (n * (n - k)) * w;
}

}  // namespace detail

template <class T>
RiccatiModel<T> riccati_model(RiccatiLevel level, const PviParams<T>& P, const PhasePoint<T>& pt) {
    check_boundary(pt.t, pt.q);
    using R = RatFun<T>;
    const T& t = pt.t;
    const T& q = pt.q;
    const T one(1), zero(0);
    const T bp = bold_p(pt);
    const T rk = P.rho + P.kinf;
    const T rr = P.rho * rk;
    RiccatiModel<T> M;
    M.level = level;
    auto pt_aff = [](std::string n, const T& x, const T& y) {
        return SingularPoint<T>{std::move(n), false, x, PLine<T>::affine(y), 0};
    };
    auto pt_inf = [](std::string n, PLine<T> y, int k) {
        return SingularPoint<T>{std::move(n), true, T(0), y, k};
    };
    if (level == RiccatiLevel::F2) {
        R D(Poly<T>({zero, t, -(one + t), one}));  // x(x-1)(x-t)
        M.A2 = R::constant(T(-1)) / D;
        M.A1 = P.k0 * detail::simple_pole(zero) + P.k1 * detail::simple_pole(one) + P.kt * detail::simple_pole(t) +
               detail::simple_pole(q);
        M.A0 = (-bp) * detail::simple_pole(q) +
               R(Poly<T>({-q * (q - one) * pt.p + t * (t - one) * hamiltonian(P, pt) + rr * t, -rr}));
        M.points = {pt_aff("s0", zero, zero),
                    pt_aff("s0'", zero, t * P.k0),
                    pt_aff("s1", one, zero),
                    pt_aff("s1'", one, (one - t) * P.k1),
                    pt_aff("st", t, zero),
                    pt_aff("st'", t, t * (t - one) * P.kt),
                    pt_aff("sq", q, bp),
                    SingularPoint<T>{"sq'", false, q, PLine<T>::infinity(), 0},
                    pt_inf("sinf", PLine<T>::affine(-P.rho), 2),
                    pt_inf("sinf'", PLine<T>::affine(-P.rho - P.kinf), 2)};
        return M;
    }
    const bool f0 = level == RiccatiLevel::F0;
    if (f0 && coincides(P.kinf, T(-1))) fail(ErrorKind::ResonantInfinity, "kinf = -1 at level F0");
    detail::add_quadratic_term(M, one, q, bp, t * P.k0, t * q, zero);
    const T n1 = f0 ? (q - one) * rk + bp : bp;
    detail::add_quadratic_term(M, T(-1), q - one, n1, (one - t) * P.k1, (t - one) * (q - one), one);
    const T nt = f0 ? (q - t) * t * rk + bp : bp;
    detail::add_quadratic_term(M, one, q - t, nt, t * (t - one) * P.kt, t * (t - one) * (q - t), t);
    if (!f0) {
        M.A0 += R::constant(-rr);
        M.points = {pt_aff("s0", zero, bp / q),
                    pt_aff("s0'", zero, (bp - t * P.k0) / q),
                    pt_aff("s1", one, bp / (q - one)),
                    pt_aff("s1'", one, (bp - (one - t) * P.k1) / (q - one)),
                    pt_aff("st", t, bp / (q - t)),
                    pt_aff("st'", t, (bp - t * (t - one) * P.kt) / (q - t)),
                    pt_inf("sinf", PLine<T>::affine(-P.rho), 1),
                    pt_inf("sinf'", PLine<T>::affine(-P.rho - P.kinf), 1)};
        return M;
    }
    const T ki1 = P.kinf + one;
    T sinf_p = -bp * (bp - t * P.k0) / (t * q * ki1) + bp * (bp - (one - t) * P.k1) / ((t - one) * (q - one) * ki1) -
               bp * (bp - t * (t - one) * P.kt) / (t * (t - one) * (q - t) * ki1) -
               rk / ki1 * (rk * (q - t - one) - P.k1 - t * P.kt);
    M.points = {pt_aff("s0", zero, bp / q),
                pt_aff("s0'", zero, (bp - t * P.k0) / q),
                pt_aff("s1", one, bp / (q - one) + rk),
                pt_aff("s1'", one, (bp - (one - t) * P.k1) / (q - one) + rk),
                pt_aff("st", t, bp / (q - t) + rk * t),
                pt_aff("st'", t, (bp - t * (t - one) * P.kt) / (q - t) + rk * t),
                pt_inf("sinf", PLine<T>::infinity(), 0),
                pt_inf("sinf'", PLine<T>::affine(sinf_p), 0)};
    return M;
}

// Riccati equation y' = -b y^2 - 2a y + c induced by a fuchsian system.
template <class T>
RiccatiModel<T> projectivize(const FuchsianSystem<T>& S) {
    RiccatiModel<T> M;
    M.level = RiccatiLevel::F0;
    for (int i = 0; i < 3; ++i) {
        RatFun<T> w = detail::simple_pole(S.pole(i));
        const Mat2<T>& A = S.residue(i);
        M.A2 += (-A.b) * w;
        M.A1 += (T(-2) * A.a) * w;
        M.A0 += A.c * w;
    }
    return M;
}

// Residue quadratic (r2, r1, r0) of the Riccati field at a finite pole, i.e. singular points are its roots.
template <class T>
std::array<T, 3> riccati_residue(const RiccatiModel<T>& M, const T& x0) {
    return {residue_at(M.A2, x0), residue_at(M.A1, x0), residue_at(M.A0, x0)};
}

// Same at x = infinity in the chart ytilde = y / x^k, up to an overall sign.
template <class T>
std::array<T, 3> riccati_residue_infinity(const RiccatiModel<T>& M, int k) {
    // dytilde/dx = A2 x^k yt^2 + (A1 - k/x) yt + A0 x^-k, each ~ r / x at infinity.
    auto lead = [](const RatFun<T>& r, int shift) {
        // coefficient of 1/x in r(x) * x^shift at infinity
        Laurent<T> s = expand_at_infinity(r, 2 + std::max(0, shift));
        return s.coeff(1 + shift);
    };
    T r1 = lead(M.A1, 0) - T(k);
    return {lead(M.A2, k), r1, lead(M.A0, -k)};
}

// Normal form dy/dx = ((x-q)y^2 + b0 y)/(x(x-1)(x-t)) + c0/(t x) + c1/((1-t)(x-1)) + ct/(t(t-1)(x-t)) + cinf
template <class T>
struct NormalFormF1 {
    T t, q, b0, c0, c1, ct, cinf;

    T delta0() const { return (b0 * b0 + T(4) * q * c0) / (t * t); }
    T delta1() const { return (b0 * b0 + T(4) * (q - T(1)) * c1) / ((t - T(1)) * (t - T(1))); }
    T deltat() const { return (b0 * b0 + T(4) * (q - t) * ct) / (t * t * (t - T(1)) * (t - T(1))); }
    T deltainf() const { return T(1) - T(4) * cinf; }
};

template <class T>
NormalFormF1<T> riccati_normal_form(const RiccatiModel<T>& M, const T& t) {
    const T zero(0), one(1);
    Poly<T> D({zero, t, -(one + t), one});
    auto numer = [&](const RatFun<T>& r) {
        RatFun<T> s = r * RatFun<T>(D);
        auto [quo, rem] = Poly<T>::divmod(s.num(), s.den());
        double scale = 0;
        for (const T& c : s.num().coeffs()) scale = std::max(scale, magnitude(c));
        for (const T& c : rem.coeffs())
            if (!negligible(c, scale)) fail(ErrorKind::InvalidArgument, "Riccati coefficient has poles off {0,1,t}");
        std::vector<T> cs = quo.coeffs();
        // drop float round-off in the top coefficients
        if constexpr (!is_exact_v<T>)
            while (!cs.empty() && negligible(cs.back(), scale)) cs.pop_back();
        return Poly<T>(cs);
    };
    Poly<T> N2 = numer(M.A2), N1 = numer(M.A1), N0 = numer(M.A0);
    if (N2.degree() > 1 || N1.degree() > 2 || N0.degree() > 3)
        fail(ErrorKind::InvalidArgument, "Riccati equation is not of F1 type");
    const T a1 = N2.coeff(1), a0 = N2.coeff(0);
    if (isolame::is_zero(a1) && isolame::is_zero(a0)) fail(ErrorKind::UnstableInput, "negative section is invariant");
    if (negligible(a1, magnitude(a0))) fail(ErrorKind::QAtInfinity, "tangency with the negative section at infinity");
    const T beta = -N1.coeff(2) / (T(2) * a1);
    const T gamma = (-N1.coeff(1) / T(2) - a0 * beta) / a1;
    Poly<T> L({gamma, beta});
    Poly<T> C = a1 * (N2 * L * L + N1 * L + N0 - beta * D);
    NormalFormF1<T> nf;
    nf.t = t;
    nf.q = -a0 / a1;
    nf.b0 = T(2) * a0 * gamma + N1.coeff(0);
    nf.c0 = C(zero);
    nf.c1 = C(one);
    nf.ct = C(t);
    nf.cinf = C.coeff(3);
    return nf;
}

// Expected b0 of the normal form of riccati_model(F1).
template <class T>
T expected_b0(const PviParams<T>& P, const PhasePoint<T>& pt) {
    const T& q = pt.q;
    const T& t = pt.t;
    return T(-2) * bold_p(pt) + (q - T(1)) * (q - t) * P.k0 + q * (q - t) * P.k1 + q * (q - T(1)) * P.kt;
}

enum class ElmSign { Plus, Minus };

// Result of an elementary transformation at z = 0 of dY = Omega Y, Omega = M(z) dz.
template <class T>
struct ElmLocalResult {
    MatSeries<T> omega;    // new connection matrix in the trivialization Y' = phi(C Y)
    Mat2<T> residue;       // coefficient of dz/z
    Mat2<T> frame;         // constant C with C l = (0:1)
    PLine<T> new_line;     // l+ or l-, always (1:0) in the new trivialization
};

namespace detail {

// Constant matrix sending l to (0:1).
template <class T>
Mat2<T> frame_to_e2(const PLine<T>& l) {
    if (isolame::is_zero(l.u0)) return Mat2<T>::identity();
    // columns of C^-1: (u0, u1) -> e2 and e1 -> e1 direction complement
    Mat2<T> Cinv{T(1), l.u0, T(0), l.u1};
    if (isolame::is_zero(l.u1)) Cinv = {T(0), T(1), T(-1), T(0)};
    return Cinv.inverse();
}

}  // namespace detail

// Elementary transformation along l at the origin; M is the local matrix of Omega/dz.
template <class T>
ElmLocalResult<T> elm_local(const MatSeries<T>& M, const PLine<T>& l, ElmSign sign) {
    const int prec = std::min({M.a.precision(), M.b.precision(), M.c.precision(), M.d.precision()});
    const int vin = M.valuation();
    Mat2<T> C = detail::frame_to_e2(l);
    MatSeries<T> Cs = MatSeries<T>::from_constant(C, prec + 4), Ci = MatSeries<T>::from_constant(C.inverse(), prec + 4);
    MatSeries<T> B = (Cs * M * Ci).truncate(prec);
    Laurent<T> zinv = Laurent<T>::monomial(-1, prec + 4), z = Laurent<T>::monomial(1, prec + 4);
    ElmLocalResult<T> r;
    r.frame = C;
    r.new_line = PLine<T>::affine(T(0));
    if (sign == ElmSign::Plus)
        r.omega = {B.a, (B.b * zinv), (z * B.c), B.d + zinv};
    else
        r.omega = {B.a - zinv, (B.b * zinv), (z * B.c), B.d};
    r.omega = r.omega.truncate(prec - 1);
    if (vin >= -1 && r.omega.valuation() < -1)
        fail(ErrorKind::NonEigenline, "line is not an eigenline of the residue");
    r.residue = r.omega.coeff(-1);
    return r;
}

// Residue-only form: Omega = A dz/z.
template <class T>
ElmLocalResult<T> elm_local(const Mat2<T>& A, const PLine<T>& l, ElmSign sign, int prec = 4) {
    MatSeries<T> M{Laurent<T>(-1, {A.a}, prec), Laurent<T>(-1, {A.b}, prec), Laurent<T>(-1, {A.c}, prec),
                   Laurent<T>(-1, {A.d}, prec)};
    return elm_local(M, l, sign);
}

namespace detail {

// dq/dt at sample i from the Lagrange interpolant through up to 7 neighbouring samples.
inline Complex sample_derivative(const std::vector<PhasePoint<Complex>>& s, size_t i) {
    const size_t n = s.size(), m = std::min<size_t>(n, 7);
    size_t lo = i >= m / 2 ? i - m / 2 : 0;
    if (lo + m > n) lo = n - m;
    Complex d(0);
    for (size_t j = lo; j < lo + m; ++j) {
        if (j == i) {
            for (size_t k = lo; k < lo + m; ++k)
                if (k != i) d += s[i].q / (s[i].t - s[k].t);
            continue;
        }
        Complex w = 1.0 / (s[j].t - s[i].t);
        for (size_t k = lo; k < lo + m; ++k)
            if (k != i && k != j) w *= (s[i].t - s[k].t) / (s[j].t - s[k].t);
        d += w * s[j].q;
    }
    return d;
}

}  // namespace detail

// max over samples of |dq/dt - (-2 a0 (q-1)/(t-1) - 2 a1 q / t + (1 - thetainf) q (q-1)/(t(t-1)))| / (1 + |dq/dt|),
// with dq/dt read off the samples themselves; a single sample falls back to the Hamiltonian field.
inline double q_ode_residual(const PviParams<Complex>& P, const Trajectory& traj) {
    double worst = 0.0;
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& pt = traj.samples[i];
        auto S = system_from_pq(P, pt);
        const Complex t = pt.t, q = pt.q;
        Complex dq = traj.samples.size() > 1 ? detail::sample_derivative(traj.samples, i)
                                             : hamiltonian_field(P, pt).first;
        Complex rhs = -2.0 * S.A0.a * (q - 1.0) / (t - 1.0) - 2.0 * S.A1.a * q / t +
                      (1.0 - S.theta[3]) * q * (q - 1.0) / (t * (t - 1.0));
        worst = std::max(worst, std::abs(dq - rhs) / (1.0 + std::abs(dq)));
    }
    return worst;
}

// Accessory parameter c of the Lame equation with n = v/2.
template <class T>
T lame_accessory(const T& lambda, const T& v, const T& t) {
    return T(2) * lambda * (v - T(1)) + (t + T(1)) * (v / T(2)) * (v / T(2) - T(1));
}

}  // namespace isolame
