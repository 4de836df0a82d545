#include <gtest/gtest.h>

#include <numbers>

#include "isolame/monodromy.hpp"
#include "support.hpp"

using namespace isolame;
using isolame::testing::Q;
using isolame::testing::Rng;
using isolame::testing::thrown_kind;

namespace {

constexpr double kPi = std::numbers::pi;

FuchsianSystem<Complex> single_pole(Complex theta) {
    FuchsianSystem<Complex> S;
    S.t = 5.0;
    S.A0 = CMat2::diag(theta / 2.0, -theta / 2.0);
    S.A1 = CMat2{};
    S.At = CMat2{};
    S.theta = {theta, 0.0, 0.0, theta};
    return S;
}

PlanePath circle(Complex c, double r, int n = 64) {
    std::vector<Complex> w;
    for (int k = 0; k <= n; ++k) w.push_back(c + r * std::exp(Complex(0, 2 * kPi * (k % n) / n)));
    return PlanePath(std::move(w));
}

CMat2 random_sl2(Rng& rng) {
    CMat2 M{rng.complex(1.5), rng.complex(1.5), rng.complex(1.5), rng.complex(1.5)};
    return M * (1.0 / std::sqrt(M.det()));
}

// Moderate data: entries of size ~6 keep the fundamental matrix well inside double range.
PhasePoint<Rational> moderate_point(Rng& rng) {
    PhasePoint<Rational> pt;
    do pt.t = rng.rational(6, 6); while (pt.t == 0 || pt.t == 1);
    do pt.q = rng.rational(6, 6); while (pt.q == 0 || pt.q == 1 || pt.q == pt.t);
    pt.p = rng.nonzero_rational(6, 6);
    return pt;
}

PviParams<Rational> moderate_params(Rng& rng) {
    return make_params<Rational>(rng.rational(4, 6), rng.rational(4, 6), rng.rational(4, 6), rng.rational(4, 6));
}

// A point whose residues have entries at most 2.5: the lasso transports then stay of moderate size.
// Large non-normal residues make |M| grow like 0.1^(-|A|) and the absolute tolerances unreachable.
PhasePoint<Rational> tame_point(Rng& rng, const PviParams<Rational>& P) {
    for (;;) {
        auto pt = moderate_point(rng);
        auto S = to_complex(system_from_pq(P, pt));
        if (std::max({max_abs(S.A0), max_abs(S.A1), max_abs(S.At)}) <= 2.5) return pt;
    }
}

MonodromyQuadruple quadruple_at(const PviParams<Complex>& P, const PhasePoint<Complex>& pt) {
    return monodromy_quadruple(system_from_pq(P, pt));
}

}  // namespace

TEST(Transport, ContractibleLoopIsIdentity) {
    auto S = to_complex(system_from_pq(make_params<Rational>(Q(1, 3), Q(1, 5), Q(-1, 7), Q(2, 9)), {Q(2), Q(3), Q(1, 4)}));
    Monodromy2 M = transport(S, circle(Complex(0.5, 1.0), 0.3), {});
    EXPECT_LT(max_abs_diff(M, CMat2::identity()), 1e-7);
}

TEST(Transport, SinglePoleClosedForm) {
    for (Complex th : {Complex(0.3), Complex(-0.75), Complex(0.2, 0.4)}) {
        Monodromy2 M = transport(single_pole(th), circle(0.0, 0.5));
        CMat2 expect = CMat2::diag(std::exp(Complex(0, kPi) * th), std::exp(Complex(0, -kPi) * th));
        EXPECT_LT(max_abs_diff(M, expect), 1e-7) << th;
        EXPECT_LT(std::abs(M.det() - 1.0), 1e-8);
    }
}

TEST(Transport, Errors) {
    auto S = single_pole(0.3);
    EXPECT_EQ(thrown_kind([&] { transport(S, circle(0.0, 5e-4)); }), "LoopTooClose");
    EXPECT_EQ(thrown_kind([&] { transport(S, PlanePath({Complex(0.5), Complex(0, 0.5), Complex(-0.5)})); }),
              "InvalidArgument");
    EXPECT_EQ(thrown_kind([&] { monodromy_quadruple(S, Complex(5.0, 1e-4)); }), "LoopTooClose");
}

TEST(Transport, HalfKappaGivesTraceZero) {
    auto P = make_params<Rational>(Q(1, 2), Q(1, 5), Q(-1, 7), Q(2, 9));
    auto S = to_complex(system_from_pq(P, {Q(2), Q(3), Q(1, 4)}));
    Monodromy2 M = transport(S, lasso(default_base_point(S.t), 0.0, 0.1));
    EXPECT_LT(std::abs(M.trace()), 1e-6);
}

TEST(Quadruple, RelationAndTraces) {
    Rng rng(61);
    for (int k = 0; k < 8; ++k) {
        auto P = moderate_params(rng);
        auto pt = tame_point(rng, P);
        auto C = to_complex(system_from_pq(P, pt));
        auto Qd = monodromy_quadruple(C);
        EXPECT_LT(Qd.relation_defect(), 1e-7);
        EXPECT_LT(trace_defect(Qd, C.theta), 1e-6);
        EXPECT_LT(std::abs(Qd.Minf.trace() - 2.0 * std::cos(kPi * (to_complex(P.kinf) + 1.0))), 1e-6);
        for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(Qd[i].det() - 1.0), 1e-8);
        EXPECT_FALSE(Qd.loop_convention.empty());
    }
}

TEST(Quadruple, IsomonodromyAlongFlow) {
    Rng rng(62);
    for (int k = 0; k < 3; ++k) {
        auto P = make_params<Complex>(rng.real(-0.8, 0.8), rng.real(-0.8, 0.8), rng.real(-0.8, 0.8), rng.real(-0.8, 0.8));
        PhasePoint<Complex> s{Complex(0.3), rng.complex(0.5) + Complex(0.5, 0.8), rng.complex(0.5) + Complex(0, 0.5)};
        // starts whose quadruple is not representable at the base point are redrawn
        if (thrown_kind([&] { quadruple_at(P, s); }) == "NonConvergence") {
            --k;
            continue;
        }
        auto tr = flow(P, s, PlanePath({0.3, Complex(0.45, 0.1), Complex(0.6, 0.05)}));
        auto a = six_traces(quadruple_at(P, tr.samples.front()));
        auto mid = six_traces(quadruple_at(P, tr.samples[tr.samples.size() / 2]));
        auto b = six_traces(quadruple_at(P, tr.end()));
        for (int i = 0; i < 6; ++i) {
            EXPECT_LT(std::abs(a[i] - b[i]), 1e-6) << i;
            EXPECT_LT(std::abs(a[i] - mid[i]), 1e-6) << i;
        }
    }
}

TEST(Quadruple, IllConditionedBasisRaises) {
    // traces of size ~1e5 force |M1| ~ 1e7 at the base point; the relation cannot hold to 1e-7
    auto P = make_params<Complex>(0.59, 0.71, 0.87, 0.24);
    auto S = system_from_pq(P, PhasePoint<Complex>{0.3, Complex(0.78, 0.78), Complex(0.17, 0.89)});
    EXPECT_EQ(thrown_kind([&] { monodromy_quadruple(S); }), "NonConvergence");
}

TEST(Quadruple, LassoTransportMatchesPathIntegral) {
    auto S = to_complex(system_from_pq(make_params<Rational>(Q(1, 3), Q(1, 5), Q(-1, 7), Q(2, 9)), {Q(2), Q(3), Q(1, 4)}));
    const Complex base = default_base_point(S.t);
    for (Complex p : {Complex(0), Complex(1), S.t}) {
        Monodromy2 a = lasso_transport(S, base, p, 0.1), b = transport(S, lasso(base, p, 0.1));
        EXPECT_LT(max_abs_diff(a, b), 1e-8 * (1 + max_abs(b)));
    }
}

TEST(Pullback, IdentityQuadruple) {
    MonodromyQuadruple Qd;
    Qd.M0 = Qd.M1 = Qd.Mt = Qd.Minf = CMat2::identity();
    auto R = pullback_rep(Qd);
    EXPECT_EQ(max_abs_diff(R.A, CMat2::identity()), 0.0);
    EXPECT_EQ(max_abs_diff(R.B, CMat2::identity()), 0.0);
}

TEST(Pullback, LameExponents) {
    Rng rng(63);
    for (Rational v : {Q(1, 3), Q(3, 2), Q(3), Q(5, 7)}) {
        auto P = make_params<Rational>(Q(1, 2), Q(1, 2), Q(1, 2), Rational((v - 1) / 2));
        // tr[A,B] cancels terms of size |tr A|^2 |tr B|^2; keep the Fricke coordinates O(10)
        MonodromyQuadruple Qd;
        for (;;) {
            Qd = monodromy_quadruple(to_complex(system_from_pq(P, tame_point(rng, P))));
            auto tr = six_traces(Qd);
            if (std::all_of(tr.begin(), tr.end(), [](Complex x) { return std::abs(x) <= 10.0; })) break;
        }
        auto R = pullback_rep(Qd);
        const double vd = v.get_d();
        CMat2 comm = R.A * R.B * R.A.inverse() * R.B.inverse();
        EXPECT_LT(std::abs(comm.trace() - 2.0 * std::cos(kPi * vd)), 1e-5) << v;
        EXPECT_LT(std::abs(comm.trace() - (2.0 - Qd.Minf.trace() * Qd.Minf.trace())), 1e-6);
        EXPECT_LT(std::abs(Qd.Minf.trace() + 2.0 * std::sin(kPi * vd / 2)), 1e-5);
        for (int i = 0; i < 3; ++i) EXPECT_LT(max_abs_diff(Qd[i] * Qd[i], -CMat2::identity()), 1e-6);
        // M1 is an involution of the pair, and descends back to the quadruple
        LameRep L{R.A, R.B, Qd.M1};
        EXPECT_LT(lame_rep_defect(L), 1e-6);
        auto D = descend_rep(L, vd);
        for (int i = 0; i < 4; ++i) EXPECT_LT(max_abs_diff(D[i], Qd[i]), 1e-6) << i;
    }
}

TEST(Fricke, Examples) {
    auto I = fricke(CMat2::identity(), CMat2::identity());
    EXPECT_EQ(I.a, Complex(2));
    EXPECT_EQ(I.d, Complex(2));
    EXPECT_EQ(fricke_from_traces<Rational>(Q(0), Q(0), Q(0)).d, Q(-2));
    EXPECT_EQ(fricke_from_traces<Rational>(Q(3), Q(0), Q(0)).d, Q(7));
}

TEST(Fricke, CommutatorTrace) {
    Rng rng(64);
    for (int k = 0; k < 50; ++k) {
        CMat2 A = random_sl2(rng), B = random_sl2(rng);
        auto F = fricke(A, B);
        Complex tr = (A * B * A.inverse() * B.inverse()).trace();
        EXPECT_LT(std::abs(F.d - tr) / (1 + std::abs(tr)), 1e-8);
    }
}

TEST(NormalForm, GammaOne) {
    auto N = normal_form_from_fricke<Rational>(Q(3), Q(-1, 2), Q(2), GammaChoice::Plus);
    EXPECT_EQ(N.gamma, Q(1));
    EXPECT_EQ((N.A * N.B).trace(), Q(2));
}

TEST(NormalForm, DihedralPair) {
    auto N = normal_form_with_gamma<Complex>(0.0, 0.0, Complex(0, 1));
    EXPECT_EQ(max_abs_diff(N.A, CMat2{0.0, -1.0, 1.0, 0.0}), 0.0);
    EXPECT_LT(max_abs_diff(N.B, CMat2{0.0, Complex(0, -1), Complex(0, -1), 0.0}), 1e-16);
    EXPECT_LT(max_abs_diff(N.A * N.A, -CMat2::identity()), 1e-16);
    EXPECT_LT(max_abs_diff(N.B * N.B, -CMat2::identity()), 1e-16);
    EXPECT_LT(std::abs(fricke(N.A, N.B).d + 2.0), 1e-15);
}

TEST(NormalForm, RationalRoundTripExact) {
    Rng rng(65);
    for (int k = 0; k < 50; ++k) {
        Rational a = rng.rational(), b = rng.rational(), g = rng.nonzero_rational();
        Rational c = g + 1 / g;
        auto N = normal_form_with_gamma(a, b, g);
        auto F = fricke(N.A, N.B);
        EXPECT_EQ(F.a, a);
        EXPECT_EQ(F.b, b);
        EXPECT_EQ(F.c, c);
        EXPECT_EQ(N.A.det(), Q(1));
        EXPECT_EQ(N.B.det(), Q(1));
        // the same pair from the trace c, for whichever root equals g
        auto Np = normal_form_from_fricke(a, b, c, GammaChoice::Plus);
        auto Nm = normal_form_from_fricke(a, b, c, GammaChoice::Minus);
        EXPECT_TRUE(Np.gamma == g || Nm.gamma == g);
        EXPECT_EQ(Np.gamma * Nm.gamma, Q(1));
    }
}

TEST(NormalForm, FloatRoundTrip) {
    Rng rng(66);
    for (int k = 0; k < 50; ++k) {
        Complex a = rng.complex(3), b = rng.complex(3), c = rng.complex(3);
        for (GammaChoice ch : {GammaChoice::Plus, GammaChoice::Minus}) {
            auto N = normal_form_from_fricke(a, b, c, ch);
            auto F = fricke(N.A, N.B);
            EXPECT_LT(std::abs(F.a - a) + std::abs(F.b - b) + std::abs(F.c - c), 1e-12);
        }
    }
}

TEST(Involution, DihedralExample) {
    CMat2 M = involution_matrix(0.0, 0.0, Complex(0, 1));
    EXPECT_LT(max_abs_diff(M, CMat2::diag(Complex(0, 1), Complex(0, -1))), 1e-15);
}

TEST(Involution, RawDeterminantExact) {
    Rng rng(67);
    for (int k = 0; k < 50; ++k) {
        Rational a = rng.rational(), b = rng.rational(), g = rng.nonzero_rational();
        auto M = involution_matrix_raw(a, b, g);
        EXPECT_EQ(M.trace(), Q(0));
        Rational expect = -(g * g - 1) * (g * g - 1) / (4 * g * g) - (a - b * g) * (a * g - b) / (4 * g);
        EXPECT_EQ(M.det(), expect);
        // conjugation identities hold before normalization
        auto N = normal_form_with_gamma(a, b, g);
        if (M.det() == 0) continue;
        EXPECT_EQ(M * N.A * M.inverse(), N.A.inverse());
        EXPECT_EQ(M * N.B * M.inverse(), N.B.inverse());
    }
}

TEST(Involution, ConjugatesToInverses) {
    Rng rng(68);
    for (int k = 0; k < 50; ++k) {
        Complex a = rng.complex(3), b = rng.complex(3), c = rng.complex(3);
        auto N = normal_form_from_fricke(a, b, c, GammaChoice::Plus);
        CMat2 M = involution_matrix(a, b, N.gamma);
        LameRep R{N.A, N.B, M};
        EXPECT_LT(lame_rep_defect(R), 1e-10);
        EXPECT_EQ(M.trace(), Complex(0));
    }
}

TEST(Involution, SingularForReduciblePair) {
    // a = b = 2, gamma = 1: both matrices unipotent, the raw matrix vanishes
    EXPECT_EQ(thrown_kind([] { involution_matrix(2.0, 2.0, 1.0); }), "InvalidInvolution");
}

TEST(Descend, Examples) {
    CMat2 A{0.0, -1.0, 1.0, 0.0};
    CMat2 M = CMat2::diag(Complex(0, 1), Complex(0, -1));
    CMat2 B = normal_form_with_gamma<Complex>(0.0, 0.0, Complex(0, 1)).B;
    auto D = descend_rep({A, B, M});
    EXPECT_LT(max_abs_diff(D.M0, CMat2{0.0, Complex(0, -1), Complex(0, -1), 0.0}), 1e-16);
    for (int i = 0; i < 3; ++i) EXPECT_LT(max_abs_diff(D[i] * D[i], -CMat2::identity()), 1e-15);
    EXPECT_LT(D.relation_defect(), 1e-15);
    EXPECT_EQ(thrown_kind([&] { descend_rep({A, B, CMat2::identity()}); }), "InvalidInvolution");
}

TEST(Descend, PullbackRoundTrip) {
    Rng rng(69);
    for (int k = 0; k < 50; ++k) {
        Complex a = rng.complex(3), b = rng.complex(3), c = rng.complex(3);
        auto N = normal_form_from_fricke(a, b, c, GammaChoice::Minus);
        LameRep R{N.A, N.B, involution_matrix(a, b, N.gamma)};
        auto P = pullback_rep(descend_rep(R));
        EXPECT_LT(max_abs_diff(P.A, R.A), 1e-10 * (1 + max_abs(R.A)));
        EXPECT_LT(max_abs_diff(P.B, R.B), 1e-10 * (1 + max_abs(R.B)));
    }
}

TEST(Descend, SignFixedByInfinityTrace) {
    Rng rng(70);
    for (double v : {0.3, 1.5, 2.7}) {
        // a pair with tr [A,B] = 2 cos(pi v)
        Complex a = rng.complex(1), b = rng.complex(1);
        // choose c with a^2 + b^2 + c^2 - abc - 2 = 2cos(pi v)
        Complex B1 = -a * b, C0 = a * a + b * b - 2.0 - 2.0 * std::cos(kPi * v);
        Complex c = (-B1 + std::sqrt(B1 * B1 - 4.0 * C0)) / 2.0;
        auto N = normal_form_from_fricke(a, b, c, GammaChoice::Plus);
        LameRep R{N.A, N.B, involution_matrix(a, b, N.gamma)};
        auto D = descend_rep(R, v);
        EXPECT_LT(std::abs(D.Minf.trace() + 2.0 * std::sin(kPi * v / 2)), 1e-9) << v;
        auto E = descend_rep({R.A, R.B, -R.M}, v);
        EXPECT_LT(max_abs_diff(D.Minf, E.Minf), 1e-10);
    }
}

TEST(Classify, Examples) {
    auto r = classify_representation(fricke_from_traces<Rational>(Q(2), Q(2), Q(2)));
    EXPECT_TRUE(r.reducible);
    EXPECT_EQ(r.surface_label, "S_2");
    EXPECT_TRUE(r.singular_point);
    auto s = classify_representation(fricke_from_traces<Rational>(Q(0), Q(0), Q(0)));
    EXPECT_FALSE(s.reducible);
    EXPECT_EQ(s.surface_label, "S_-2");
    EXPECT_TRUE(s.singular_point);
    auto u = classify_representation(fricke_from_traces<Rational>(Q(3), Q(0), Q(0)));
    EXPECT_FALSE(u.reducible);
    EXPECT_EQ(u.surface_label, "S_7");
    EXPECT_FALSE(u.singular_point);
    auto w = classify_representation(fricke_from_traces<Rational>(Q(-2), Q(-2), Q(2)));
    EXPECT_TRUE(w.reducible);
    EXPECT_TRUE(w.singular_point);
    auto x = classify_representation(fricke_from_traces<Rational>(Q(2), Q(3), Q(3)));
    EXPECT_TRUE(x.reducible);
    EXPECT_FALSE(x.singular_point);
    // odd sign patterns are off S_2
    EXPECT_EQ(classify_representation(fricke_from_traces<Rational>(Q(-2), Q(2), Q(2))).surface_label, "S_18");
    auto f = classify_representation(fricke_from_traces<Complex>(2.0, 2.0, 2.0 + 1e-12));
    EXPECT_TRUE(f.reducible);
}
