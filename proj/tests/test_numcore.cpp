#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "isolame/numcore/bivariate.hpp"
#include "isolame/numcore/mat2.hpp"
#include "isolame/numcore/ode.hpp"
#include "isolame/numcore/poly.hpp"
#include "isolame/numcore/ratfun.hpp"
#include "isolame/numcore/roots.hpp"
#include "isolame/numcore/scalar.hpp"
#include "isolame/numcore/series.hpp"
#include "support.hpp"

using namespace isolame;
using isolame::testing::Q;
using isolame::testing::Rng;
using isolame::testing::thrown_kind;

using QPoly = Poly<Rational>;
using QRat = RatFun<Rational>;

namespace {

QRat random_ratfun(Rng& rng) {
    std::vector<Rational> n, d;
    int dn = rng.integer(0, 3), dd = rng.integer(0, 2);
    for (int k = 0; k <= dn; ++k) n.push_back(rng.rational(9, 5));
    for (int k = 0; k < dd; ++k) d.push_back(rng.rational(9, 5));
    d.push_back(Rational(1));
    return QRat(QPoly(n), QPoly(d));
}

}  // namespace

TEST(Scalar, RationalCanonicalForm) {
    Rational r(6, -4);
    r.canonicalize();
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
}

TEST(Scalar, ParseLiterals) {
    EXPECT_EQ(parse_scalar("3").re, Q(3));
    EXPECT_EQ(parse_scalar("-1/4").re, Q(-1, 4));
    EXPECT_EQ(parse_scalar("0.25").re, Q(1, 4));
    EXPECT_EQ(parse_scalar("1e-3").re, Q(1, 1000));
    // leading zeros are decimal, never octal
    EXPECT_EQ(parse_scalar("0.8").re, Q(4, 5));
    EXPECT_EQ(parse_scalar("0.10").re, Q(1, 10));
    EXPECT_EQ(parse_scalar("010/08").re, Q(5, 4));
    auto z = parse_scalar("0.3+0.1i");
    EXPECT_EQ(z.re, Q(3, 10));
    EXPECT_EQ(z.im, Q(1, 10));
    auto w = parse_scalar("1/2-3/4i");
    EXPECT_EQ(w.re, Q(1, 2));
    EXPECT_EQ(w.im, Q(-3, 4));
    EXPECT_EQ(parse_scalar("i").im, Q(1));
    EXPECT_EQ(parse_scalar("-2.5i").im, Q(-5, 2));
    EXPECT_TRUE(parse_scalar("7").is_real());
}

TEST(Scalar, ParseErrors) {
    EXPECT_EQ(thrown_kind([] { parse_scalar(""); }), "InvalidArgument");
    EXPECT_EQ(thrown_kind([] { parse_scalar("abc"); }), "InvalidArgument");
    EXPECT_EQ(thrown_kind([] { parse_scalar("1/"); }), "InvalidArgument");
    EXPECT_EQ(thrown_kind([] { parse_scalar("1/0"); }), "DivisionByZero");
    EXPECT_EQ(thrown_kind([] { parse_scalar("1e"); }), "InvalidArgument");
}

TEST(Scalar, FormatNeverPrintsNegativeZero) {
    EXPECT_EQ(format_scalar(Complex(-0.0, -0.0)).find('-'), std::string::npos);
    EXPECT_EQ(format_scalar(Q(-3, 6)), "-1/2");
}

TEST(Poly, ArithmeticAndEvaluation) {
    QPoly p({Q(-1), Q(0), Q(1)});  // x^2 - 1
    QPoly q({Q(-1), Q(1)});        // x - 1
    auto [quo, rem] = QPoly::divmod(p, q);
    EXPECT_EQ(quo, QPoly({Q(1), Q(1)}));
    EXPECT_TRUE(rem.is_zero());
    EXPECT_EQ(p(Q(3)), Q(8));
    EXPECT_EQ(p.derivative(), QPoly({Q(0), Q(2)}));
    EXPECT_EQ(QPoly::gcd(p, q * q), q);
    EXPECT_TRUE(QPoly({Q(0), Q(0)}).is_zero());
}

TEST(RatFun, CommonDenominator) {
    QRat x = QRat::x();
    QRat a = x / (x - Q(1));
    QRat b = QRat::constant(Q(1)) / (x - Q(1));
    EXPECT_EQ(a + b, (x + Q(1)) / (x - Q(1)));
}

TEST(RatFun, DerivativeOfSquare) {
    QRat x = QRat::x();
    EXPECT_EQ((x * x).derivative(), Q(2) * x);
}

TEST(RatFun, RemovableSingularity) {
    // float mode keeps the unreduced quotient
    Poly<Complex> n({Complex(-1), Complex(0), Complex(1)}), d({Complex(-1), Complex(1)});
    RatFun<Complex> rf(n, d);
    EXPECT_EQ(thrown_kind([&] { rf(Complex(1)); }), "PoleEvaluation");
    QRat re(QPoly({Q(-1), Q(0), Q(1)}), QPoly({Q(-1), Q(1)}));
    EXPECT_EQ(re(Q(1)), Q(2));
}

TEST(RatFun, DivisionByZero) {
    QRat x = QRat::x();
    EXPECT_EQ(thrown_kind([&] { x / QRat(); }), "DivisionByZero");
    EXPECT_EQ(thrown_kind([&] { (QRat::constant(Q(1)) / x)(Q(0)); }), "PoleEvaluation");
}

TEST(RatFun, CanonicalMonicDenominator) {
    QRat r(QPoly({Q(2), Q(2)}), QPoly({Q(4), Q(6), Q(2)}));  // 2(x+1) / (2(x+1)(x+2))
    EXPECT_EQ(r.num(), QPoly({Q(1)}));
    EXPECT_EQ(r.den(), QPoly({Q(2), Q(1)}));
}

TEST(RatFun, RingAxiomsRandomized) {
    Rng rng(11);
    for (int k = 0; k < 40; ++k) {
        QRat a = random_ratfun(rng), b = random_ratfun(rng), c = random_ratfun(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
    }
}

TEST(Discriminant, Examples) {
    // w^2 - x
    BivariatePoly<Rational> F{{QPoly({Q(0), Q(-1)}), QPoly(), QPoly({Q(1)})}};
    EXPECT_EQ(discriminant_in_w(F), QPoly({Q(0), Q(4)}));
    // x w^2 + 2x w + x
    BivariatePoly<Rational> G{{QPoly({Q(0), Q(1)}), QPoly({Q(0), Q(2)}), QPoly({Q(0), Q(1)})}};
    EXPECT_TRUE(discriminant_in_w(G).is_zero());
    BivariatePoly<Rational> L{{QPoly({Q(1)}), QPoly({Q(0), Q(1)})}};
    EXPECT_EQ(thrown_kind([&] { discriminant_in_w(L); }), "NotQuadratic");
}

TEST(Roots, Examples) {
    auto [a, b] = poly_roots2(Complex(1), Complex(0), Complex(-1));
    EXPECT_NEAR(std::abs(a - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b + 1.0), 0.0, 1e-15);
    auto [c, d] = poly_roots2(Complex(1), Complex(-2), Complex(1));
    EXPECT_NEAR(std::abs(c - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(d - 1.0), 0.0, 1e-12);
    auto [e, f] = poly_roots2_exact(Q(1), Q(-5, 2), Q(1));
    EXPECT_EQ(e, Q(2));
    EXPECT_EQ(f, Q(1, 2));
    EXPECT_EQ(thrown_kind([] { poly_roots2(Complex(0), Complex(1), Complex(1)); }), "DegenerateLeadingCoefficient");
}

TEST(Roots, VietaRandomized) {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        Complex a = rng.complex(3.0), b = rng.complex(3.0), c = rng.complex(3.0);
        if (std::abs(a) < 1e-3) continue;
        auto [r1, r2] = poly_roots2(a, b, c);
        EXPECT_LT(std::abs(a * r1 * r2 - c), 1e-12 * (1 + std::abs(c)));
        EXPECT_LT(std::abs(a * (r1 + r2) + b), 1e-12 * (1 + std::abs(b) + std::abs(c)));
    }
}

TEST(Mat2, InverseAndCommutator) {
    Mat2<Rational> A{Q(2), Q(1), Q(1), Q(1)}, B{Q(1), Q(3), Q(0), Q(1)};
    EXPECT_EQ(A * A.inverse(), Mat2<Rational>::identity());
    EXPECT_EQ(commutator(A, B).det(), Q(1));
}

TEST(Laurent, InverseAndCompose) {
    // (1 + z)^-1 = 1 - z + z^2 - ...
    Laurent<Rational> u(0, {Q(1), Q(1)}, 6);
    Laurent<Rational> v = u.inverse();
    for (int k = 0; k < 6; ++k) EXPECT_EQ(v.coeff(k), Q(k % 2 == 0 ? 1 : -1));
    Laurent<Rational> w = u * v;
    EXPECT_EQ(w.coeff(0), Q(1));
    for (int k = 1; k < 6; ++k) EXPECT_EQ(w.coeff(k), Q(0));
    // 1/(x (x - 1)) at 0: -1/x - 1 - x - ...
    QRat r = QRat::constant(Q(1)) / (QRat::x() * (QRat::x() - Q(1)));
    auto s = expand_at(r, Q(0), 3);
    EXPECT_EQ(s.valuation(), -1);
    EXPECT_EQ(s.coeff(-1), Q(-1));
    EXPECT_EQ(s.coeff(0), Q(-1));
}

TEST(Integrate, ZeroField) {
    auto field = [](Complex, const CState<2>&) { return CState<2>{Complex(0), Complex(0)}; };
    CState<2> y0{Complex(1, 2), Complex(-3, 0.5)};
    auto sol = integrate_path<2>(field, y0, PlanePath({Complex(0), Complex(1, 1), Complex(2)}));
    EXPECT_EQ(sol.final_state[0], y0[0]);
    EXPECT_EQ(sol.final_state[1], y0[1]);
}

TEST(Integrate, ExponentialClosedForm) {
    auto field = [](Complex, const CState<1>& y) { return CState<1>{y[0]}; };
    OdeConfig cfg;
    auto sol = integrate_path<1>(field, CState<1>{Complex(1)}, PlanePath::segment(0.0, 1.0), cfg);
    EXPECT_LT(std::abs(sol.final_state[0] - std::exp(1.0)) / std::exp(1.0), 10 * cfg.rel_tol);
    // complex endpoint: exp(1 + i)
    auto sol2 = integrate_path<1>(field, CState<1>{Complex(1)}, PlanePath::segment(0.0, Complex(1, 1)), cfg);
    EXPECT_LT(std::abs(sol2.final_state[0] - std::exp(Complex(1, 1))) / std::abs(std::exp(Complex(1, 1))),
              10 * cfg.rel_tol);
}

TEST(Integrate, LinearSystemMatchesMatrixExponential) {
    // Y' = [[0,1],[-1,0]] Y, exp(sM) = [[cos s, sin s], [-sin s, cos s]]
    auto field = [](Complex, const CState<2>& y) { return CState<2>{y[1], -y[0]}; };
    OdeConfig cfg;
    Complex s1(2.0, 0.7);
    CState<2> y0{Complex(0.3), Complex(-1.1)};
    auto sol = integrate_path<2>(field, y0, PlanePath({Complex(0), Complex(1, 1), s1}), cfg);
    Complex e0 = std::cos(s1) * y0[0] + std::sin(s1) * y0[1];
    Complex e1 = -std::sin(s1) * y0[0] + std::cos(s1) * y0[1];
    double scale = std::abs(e0) + std::abs(e1);
    EXPECT_LT(std::abs(sol.final_state[0] - e0) / scale, 10 * cfg.rel_tol);
    EXPECT_LT(std::abs(sol.final_state[1] - e1) / scale, 10 * cfg.rel_tol);
    // nilpotent generator: exp(sN) = I + sN
    auto nil = [](Complex, const CState<2>& y) { return CState<2>{y[1], Complex(0)}; };
    auto sn = integrate_path<2>(nil, CState<2>{Complex(1), Complex(2)}, PlanePath::segment(0.0, Complex(0, 3)), cfg);
    EXPECT_LT(std::abs(sn.final_state[0] - (1.0 + Complex(0, 3) * 2.0)), 1e-12);
}

TEST(Integrate, ReversalReturnsToStart) {
    auto field = [](Complex s, const CState<2>& y) { return CState<2>{y[1] * s, -y[0] + 0.2 * y[1]}; };
    OdeConfig cfg;
    PlanePath path({Complex(0), Complex(0.5, 0.5), Complex(1.2, -0.2)});
    CState<2> y0{Complex(1), Complex(0, 1)};
    auto fwd = integrate_path<2>(field, y0, path, cfg);
    auto back = integrate_path<2>(field, fwd.final_state, path.reversed(), cfg);
    EXPECT_LT(std::abs(back.final_state[0] - y0[0]), 10 * cfg.rel_tol);
    EXPECT_LT(std::abs(back.final_state[1] - y0[1]), 10 * cfg.rel_tol);
}

TEST(Integrate, SamplesLieOnPathInOrder) {
    auto field = [](Complex, const CState<1>& y) { return CState<1>{y[0]}; };
    auto sol = integrate_path<1>(field, CState<1>{Complex(1)}, PlanePath::segment(0.0, 2.0));
    ASSERT_GE(sol.samples.size(), 2u);
    for (size_t k = 1; k < sol.samples.size(); ++k) EXPECT_GT(sol.samples[k].s.real(), sol.samples[k - 1].s.real());
    EXPECT_EQ(sol.samples.back().s, Complex(2.0));
}

TEST(Integrate, BlowupAndStepLimit) {
    // y' = y^2, y(0) = 1 blows up at s = 1
    auto field = [](Complex, const CState<1>& y) { return CState<1>{y[0] * y[0]}; };
    OdeConfig cfg;
    cfg.blowup_threshold = 1e6;
    Complex last{};
    try {
        integrate_path<1>(field, CState<1>{Complex(1)}, PlanePath::segment(0.0, 2.0), cfg);
        FAIL() << "expected blowup";
    } catch (const BlowupError& e) {
        last = e.last_good();
    }
    EXPECT_GT(last.real(), 0.9);
    EXPECT_LT(last.real(), 1.0);
    OdeConfig tiny;
    tiny.max_steps = 3;
    tiny.max_step = 1e-3;
    auto lin = [](Complex, const CState<1>& y) { return CState<1>{y[0]}; };
    EXPECT_EQ(thrown_kind([&] { integrate_path<1>(lin, CState<1>{Complex(1)}, PlanePath::segment(0.0, 1.0), tiny); }),
              "StepLimitExceeded");
}

TEST(Integrate, ConfigAndPathValidation) {
    OdeConfig bad;
    bad.rel_tol = -1;
    EXPECT_EQ(thrown_kind([&] { bad.validate(); }), "InvalidArgument");
    EXPECT_EQ(thrown_kind([] { PlanePath({Complex(1), Complex(1)}); }), "InvalidArgument");
    EXPECT_EQ(thrown_kind([] { PlanePath(std::vector<Complex>{}); }), "InvalidArgument");
}
