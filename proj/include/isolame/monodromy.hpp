#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "isolame/fuchs.hpp"
#include "isolame/numcore/mat2.hpp"
#include "isolame/numcore/ode.hpp"

namespace isolame {

using Monodromy2 = CMat2;

inline constexpr double kLoopClearance = 1e-3;
inline constexpr int kLassoSides = 32;
inline constexpr double kRelationTolerance = 1e-7;

inline FuchsianSystem<Complex> to_complex(const FuchsianSystem<Rational>& S) {
    FuchsianSystem<Complex> C;
    C.t = to_complex(S.t);
    C.A0 = to_complex(S.A0);
    C.A1 = to_complex(S.A1);
    C.At = to_complex(S.At);
    for (int i = 0; i < 4; ++i) C.theta[i] = to_complex(S.theta[i]);
    return C;
}
inline FuchsianSystem<Complex> to_complex(const FuchsianSystem<Complex>& S) { return S; }

// Composition: the loop gamma1 followed by gamma2 has monodromy M2 * M1.
inline constexpr const char* kLoopConvention =
    "Y(base)=Id transported along each loop; loop a then loop b has monodromy Mb*Ma; "
    "base -i*max(1,|t|); 32-gon lassos counterclockwise; Hurwitz-ordered so that Minf*Mt*M1*M0=Id";

struct MonodromyQuadruple {
    Monodromy2 M0, M1, Mt, Minf;
    Complex base_point;
    std::string loop_convention = kLoopConvention;

    const Monodromy2& operator[](int i) const { return i == 0 ? M0 : (i == 1 ? M1 : (i == 2 ? Mt : Minf)); }
    // Minf * Mt * M1 * M0 - Id
    double relation_defect() const { return max_abs_diff(Minf * Mt * M1 * M0, CMat2::identity()); }
};

namespace detail {

inline double point_segment_distance(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

inline void check_clearance(const PlanePath& loop, const std::array<Complex, 3>& poles) {
    for (size_t k = 0; k < loop.waypoints.size(); ++k) {
        Complex a = loop.waypoints[k];
        Complex b = k + 1 < loop.waypoints.size() ? loop.waypoints[k + 1] : a;
        for (const Complex& p : poles)
            if (point_segment_distance(p, a, b) < kLoopClearance)
                fail(ErrorKind::LoopTooClose, "loop passes within 1e-3 of a pole");
    }
}

}  // namespace detail

namespace detail {

// Fundamental matrix at the end of `path`, starting from Id; the path may be open.
inline CMat2 fundamental(const FuchsianSystem<Complex>& S, const PlanePath& path, const OdeConfig& cfg) {
    check_clearance(path, {Complex(0), Complex(1), S.t});
    const Mat2<Complex> A0 = S.A0, A1 = S.A1, At = S.At;
    const Complex t = S.t;
    auto field = [&](Complex x, const CState<4>& y) {
        CMat2 A = A0 * (1.0 / x) + A1 * (1.0 / (x - 1.0)) + At * (1.0 / (x - t));
        CMat2 Y{y[0], y[1], y[2], y[3]};
        CMat2 D = A * Y;
        return CState<4>{D.a, D.b, D.c, D.d};
    };
    const auto& y = integrate_path<4>(field, CState<4>{1.0, 0.0, 0.0, 1.0}, path, cfg).final_state;
    CMat2 M{y[0], y[1], y[2], y[3]};
    // the system is trace free, so det Y stays 1
    if (std::abs(M.det() - 1.0) > 1e-8) fail(ErrorKind::NonConvergence, "determinant drift above 1e-8");
    return M;
}

}  // namespace detail

// Fundamental matrix at the end of a closed loop, starting from Id.
inline Monodromy2 transport(const FuchsianSystem<Complex>& S, const PlanePath& loop, const OdeConfig& cfg = {}) {
    loop.validate();
    if (loop.start() != loop.end()) fail(ErrorKind::InvalidArgument, "loop must be closed");
    return detail::fundamental(S, loop, cfg);
}

inline Complex default_base_point(Complex t) { return Complex(0, -1) * std::max(1.0, std::abs(t)); }

// Lasso from `base` around pole `p`: straight in, counterclockwise 32-gon of radius r, straight out.
inline PlanePath lasso(Complex base, Complex p, double r) {
    Complex u = (base - p) / std::abs(base - p);
    std::vector<Complex> w{base};
    for (int k = 0; k < kLassoSides; ++k)
        w.push_back(p + r * u * std::exp(Complex(0, 2.0 * std::numbers::pi * k / kLassoSides)));
    w.push_back(p + r * u);
    w.push_back(base);
    return PlanePath(std::move(w));
}

// Monodromy along lasso(base, p, r), computed as Y^-1 C Y from the approach Y and the bare circle C.
// Equal to transport(S, lasso(base, p, r)), but tr C never sees the growth of Y along the approach.
inline Monodromy2 lasso_transport(const FuchsianSystem<Complex>& S, Complex base, Complex p, double r,
                                  const OdeConfig& cfg = {}) {
    Complex u = (base - p) / std::abs(base - p);
    std::vector<Complex> w;
    for (int k = 0; k < kLassoSides; ++k)
        w.push_back(p + r * u * std::exp(Complex(0, 2.0 * std::numbers::pi * k / kLassoSides)));
    w.push_back(p + r * u);
    CMat2 Y = detail::fundamental(S, PlanePath({base, p + r * u}), cfg);
    CMat2 C = detail::fundamental(S, PlanePath(std::move(w)), cfg);
    return Y.adjugate() * (1.0 / Y.det()) * C * Y;
}

inline MonodromyQuadruple monodromy_quadruple(const FuchsianSystem<Complex>& S, Complex base,
                                              const OdeConfig& cfg = {}) {
    const std::array<Complex, 3> poles{Complex(0), Complex(1), S.t};
    for (const Complex& p : poles)
        if (std::abs(base - p) < kLoopClearance) fail(ErrorKind::LoopTooClose, "base point too close to a pole");
    struct Entry {
        int label;
        double arg;
        Monodromy2 M;
    };
    std::vector<Entry> order;
    for (int i = 0; i < 3; ++i) {
        double nearest = 1e300;
        for (int j = 0; j < 3; ++j)
            if (j != i) nearest = std::min(nearest, std::abs(poles[i] - poles[j]));
        double r = std::min(0.1, 0.5 * nearest);
        if (r < kLoopClearance) fail(ErrorKind::LoopTooClose, "poles too close for a lasso");
        order.push_back({i, std::arg(poles[i] - base), lasso_transport(S, base, poles[i], r, cfg)});
    }
    // A large counterclockwise loop from the base is homotopic to the lassos taken by increasing
    // direction angle, measured counterclockwise from the outward direction of the base.
    Complex back = base / std::max(std::abs(base), 1e-300);
    for (auto& e : order) {
        double a = std::arg((poles[e.label] - base) / back);
        e.arg = a < 0 ? a + 2 * std::numbers::pi : a;
    }
    std::sort(order.begin(), order.end(), [](const Entry& x, const Entry& y) { return x.arg < y.arg; });
    for (size_t k = 1; k < order.size(); ++k)
        if (std::abs(order[k].arg - order[k - 1].arg) < 1e-12)
            fail(ErrorKind::LoopTooClose, "two poles are aligned with the base point");
    // Hurwitz moves: (a then b) -> (b then b a b^-1) leaves the ordered product invariant.
    for (size_t pass = 0; pass < 3; ++pass)
        for (size_t k = 0; k + 1 < order.size(); ++k)
            if (order[k].label > order[k + 1].label) {
                Entry a = order[k], b = order[k + 1];
                a.M = b.M * a.M * b.M.inverse();
                order[k] = b;
                order[k + 1] = a;
            }
    MonodromyQuadruple Q;
    Q.base_point = base;
    Q.M0 = order[0].M;
    Q.M1 = order[1].M;
    Q.Mt = order[2].M;
    Q.Minf = (Q.Mt * Q.M1 * Q.M0).inverse();
    // Rounding in the product grows like eps |Mt| |M1| |M0|; past 1e-7 the quadruple is not
    // representable in double precision in this basis, and the traces are off by as much.
    if (!(Q.relation_defect() <= kRelationTolerance))
        fail(ErrorKind::NonConvergence, "monodromy too ill conditioned at the base point: relation defect above 1e-7");
    return Q;
}

inline MonodromyQuadruple monodromy_quadruple(const FuchsianSystem<Complex>& S, const OdeConfig& cfg = {}) {
    return monodromy_quadruple(S, default_base_point(S.t), cfg);
}

// Largest violation of |tr M_i - 2 cos(pi theta_i)|.
inline double trace_defect(const MonodromyQuadruple& Q, const std::array<Complex, 4>& theta) {
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(Q[i].trace() - 2.0 * std::cos(std::numbers::pi * theta[i])));
    return worst;
}

// tr M0, tr M1, tr Mt, tr M0M1, tr M1Mt, tr M0Mt
inline std::array<Complex, 6> six_traces(const MonodromyQuadruple& Q) {
    return {Q.M0.trace(), Q.M1.trace(), Q.Mt.trace(), (Q.M0 * Q.M1).trace(), (Q.M1 * Q.Mt).trace(),
            (Q.M0 * Q.Mt).trace()};
}

struct PullbackRep {
    Monodromy2 A, B;
};

inline PullbackRep pullback_rep(const MonodromyQuadruple& Q) { return {Q.M0 * Q.M1, Q.M1 * Q.Mt}; }

template <class T>
struct FrickeTriple {
    T a{0}, b{0}, c{0}, d{0};
};

template <class T>
FrickeTriple<T> fricke_from_traces(const T& a, const T& b, const T& c) {
    return {a, b, c, T(a * a + b * b + c * c - a * b * c - T(2))};
}

template <class T>
FrickeTriple<T> fricke(const Mat2<T>& A, const Mat2<T>& B) {
    return fricke_from_traces(A.trace(), B.trace(), (A * B).trace());
}

enum class GammaChoice { Plus, Minus };

// Root of gamma + 1/gamma = c: (c +- sqrt(c^2 - 4)) / 2. Exact mode needs c^2 - 4 to be a rational square.
template <class T>
T gamma_from_c(const T& c, GammaChoice choice) {
    if constexpr (is_exact_v<T>) {
        auto roots = poly_roots2_exact(T(1), T(-c), T(1));
        return choice == GammaChoice::Plus ? roots.first : roots.second;
    } else {
        Complex s = std::sqrt(Complex(c) * Complex(c) - 4.0);
        return choice == GammaChoice::Plus ? T((Complex(c) + s) / 2.0) : T((Complex(c) - s) / 2.0);
    }
}

template <class T>
struct NormalPair {
    Mat2<T> A, B;
    T gamma;
};

// A = [[a,-1],[1,0]], B = [[0,1/gamma],[-gamma,b]]; tr AB = gamma + 1/gamma.
template <class T>
NormalPair<T> normal_form_with_gamma(const T& a, const T& b, const T& gamma) {
    if (is_zero(gamma)) fail(ErrorKind::DivisionByZero, "gamma must be nonzero");
    return {Mat2<T>{a, T(-1), T(1), T(0)}, Mat2<T>{T(0), T(T(1) / gamma), T(-gamma), b}, gamma};
}

template <class T>
NormalPair<T> normal_form_from_fricke(const T& a, const T& b, const T& c, GammaChoice choice) {
    return normal_form_with_gamma(a, b, gamma_from_c(c, choice));
}

// The matrix with M A M^-1 = A^-1, M B M^-1 = B^-1 for the normal pair, before normalization.
template <class T>
Mat2<T> involution_matrix_raw(const T& a, const T& b, const T& gamma) {
    if (is_zero(gamma)) fail(ErrorKind::DivisionByZero, "gamma must be nonzero");
    const T two(2);
    T m11 = (gamma * gamma - T(1)) / (two * gamma);
    return {m11, T((a - b * gamma) / (two * gamma)), T((a * gamma - b) / two), T(-m11)};
}

// Raw matrix rescaled to det 1, so M^2 = -Id. Fails when det vanishes (reducible pair).
inline CMat2 involution_matrix(Complex a, Complex b, Complex gamma) {
    CMat2 M = involution_matrix_raw(a, b, gamma);
    Complex det = M.det();
    if (std::abs(det) < 1e-14 * (1.0 + max_abs(M) * max_abs(M)))
        fail(ErrorKind::InvalidInvolution, "involution matrix is singular");
    return M * (1.0 / std::sqrt(det));
}

struct LameRep {
    Monodromy2 A, B, M;
};

inline double lame_rep_defect(const LameRep& R) {
    CMat2 Mi = R.M.inverse();
    return std::max({max_abs_diff(R.M * R.A * Mi, R.A.inverse()), max_abs_diff(R.M * R.B * Mi, R.B.inverse()),
                     std::abs(R.M.trace()), max_abs_diff(R.M * R.M, -CMat2::identity())});
}

// M0 = -AM, M1 = M, Mt = -MB; Minf closes the relation Minf*Mt*M1*M0 = Id.
inline MonodromyQuadruple descend_rep(const LameRep& R) {
    if (max_abs_diff(R.M * R.M, -CMat2::identity()) > 1e-8 || std::abs(R.M.trace()) > 1e-8)
        fail(ErrorKind::InvalidInvolution, "M must satisfy M^2 = -Id");
    MonodromyQuadruple Q;
    Q.M0 = -(R.A * R.M);
    Q.M1 = R.M;
    Q.Mt = -(R.M * R.B);
    Q.Minf = (Q.Mt * Q.M1 * Q.M0).inverse();
    Q.base_point = Complex(0);
    return Q;
}

// Sign of M fixed by tr Minf = -2 sin(pi v / 2); flipping M negates the whole quadruple.
inline MonodromyQuadruple descend_rep(LameRep R, Complex v) {
    MonodromyQuadruple Q = descend_rep(R);
    Complex target = -2.0 * std::sin(std::numbers::pi * v / 2.0);
    if (std::abs(-Q.Minf.trace() - target) < std::abs(Q.Minf.trace() - target)) {
        R.M = -R.M;
        Q = descend_rep(R);
    }
    return Q;
}

struct RepClass {
    bool reducible = false;
    std::string surface_label;
    bool singular_point = false;
};

template <class T>
RepClass classify_representation(const FrickeTriple<T>& F) {
    RepClass r;
    r.reducible = coincides(F.d, T(2));
    r.surface_label = "S_" + format_scalar(F.d);
    auto is = [](const T& x, int v) { return coincides(x, T(v)); };
    if (is(F.d, -2)) r.singular_point = is(F.a, 0) && is(F.b, 0) && is(F.c, 0);
    if (r.reducible) {
        // (+-2, +-2, +-2) with an even number of minus signs
        int neg = 0;
        bool ok = true;
        for (const T* x : {&F.a, &F.b, &F.c}) {
            if (is(*x, -2)) ++neg;
            else if (!is(*x, 2)) ok = false;
        }
        r.singular_point = ok && neg % 2 == 0;
    }
    return r;
}

}  // namespace isolame
