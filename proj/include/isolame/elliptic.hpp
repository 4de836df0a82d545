#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "isolame/numcore/scalar.hpp"

namespace isolame {

// Arithmetic-geometric mean with the right choice of square root (|a_n - b_n| <= |a_n + b_n|).
inline Complex agm(Complex a, Complex b) {
    if (a == Complex(0.0) || b == Complex(0.0)) fail(ErrorKind::InvalidArgument, "agm of zero");
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= 1e-15 * std::abs(a)) return a;
        Complex an = 0.5 * (a + b);
        Complex bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
        a = an;
        b = bn;
    }
    if (std::abs(a - b) <= 1e-14 * std::abs(a)) return a;
    fail(ErrorKind::NonConvergence, "agm did not converge in 64 iterations");
}

// Centered branch values e_i = {0, 1, t} - (1 + t)/3 and Weierstrass invariants.
struct WeierstrassData {
    Complex e1, e2, e3;  // images of x = 0, 1, t
    Complex g2, g3;
    Complex shift;       // x = p + shift
};

inline WeierstrassData weierstrass_data(Complex t) {
    WeierstrassData w;
    w.shift = (1.0 + t) / 3.0;
    w.e1 = -w.shift;
    w.e2 = 1.0 - w.shift;
    w.e3 = t - w.shift;
    w.g2 = -4.0 * (w.e1 * w.e2 + w.e1 * w.e3 + w.e2 * w.e3);
    w.g3 = 4.0 * w.e1 * w.e2 * w.e3;
    return w;
}

// Half-periods of the z-lattice for y^2 = x(x-1)(x-t), x = p(z) + (1+t)/3, y = p'(z)/2.
// omega0 maps to x = 0, omega1 to x = 1, omega0 + omega1 to x = t.
// P1 = 4 omega1 and P2 = 4 omega0 are periods of dx/y; tau = P2/P1 has Im > 0.
struct HalfPeriods {
    Complex t;
    Complex P1, P2, tau;
    Complex omega0, omega1;
    WeierstrassData wd;
};

namespace detail {

inline constexpr int kWpTerms = 40;

inline std::array<Complex, kWpTerms + 1> wp_coefficients(Complex g2, Complex g3) {
    std::array<Complex, kWpTerms + 1> c{};
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k <= kWpTerms; ++k) {
        Complex s = 0;
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
    }
    return c;
}

// z reduced into the parallelogram |u|, |v| <= 1/2 of the lattice 2w1 Z + 2w2 Z.
inline Complex reduce_mod_lattice(Complex z, Complex w1, Complex w2) {
    Complex L1 = 2.0 * w1, L2 = 2.0 * w2;
    // Solve z = u L1 + v L2 over the reals.
    double det = L1.real() * L2.imag() - L1.imag() * L2.real();
    double u = (z.real() * L2.imag() - z.imag() * L2.real()) / det;
    double v = (L1.real() * z.imag() - L1.imag() * z.real()) / det;
    z -= std::round(u) * L1 + std::round(v) * L2;
    // Pick the shortest representative among neighbours.
    Complex best = z;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            Complex c = z + double(a) * L1 + double(b) * L2;
            if (std::abs(c) < std::abs(best)) best = c;
        }
    return best;
}

// p and p' from g2, g3 only; z must already be reduced, and `rmin` is the shortest lattice vector.
inline std::pair<Complex, Complex> wp_reduced(Complex z, Complex g2, Complex g3, double rmin) {
    static thread_local Complex cg2{}, cg3{};
    static thread_local std::array<Complex, kWpTerms + 1> coef{};
    static thread_local bool have = false;
    if (!have || cg2 != g2 || cg3 != g3) {
        coef = wp_coefficients(g2, g3);
        cg2 = g2;
        cg3 = g3;
        have = true;
    }
    int halvings = 0;
    while (std::abs(z) > 0.2 * rmin) {
        z *= 0.5;
        ++halvings;
    }
    Complex z2 = z * z;
    Complex p = 1.0 / z2, dp = -2.0 / (z2 * z);
    Complex pw = 1.0;  // z^(2k-4)
    for (int k = 2; k <= kWpTerms; ++k) {
        p += coef[k] * pw * z2;
        dp += coef[k] * (2.0 * k - 2.0) * pw * z;
        pw *= z2;
    }
    for (int h = 0; h < halvings; ++h) {
        Complex ddp = 6.0 * p * p - 0.5 * g2;
        Complex m = ddp / dp;
        Complex p2 = 0.25 * m * m - 2.0 * p;
        Complex dp2 = -(m * (p2 - p) + dp);
        p = p2;
        dp = dp2;
    }
    return {p, dp};
}

}  // namespace detail

inline std::pair<Complex, Complex> weierstrass_p(Complex z, const HalfPeriods& hp) {
    Complex zr = detail::reduce_mod_lattice(z, hp.omega0, hp.omega1);
    double rmin = std::min({std::abs(2.0 * hp.omega0), std::abs(2.0 * hp.omega1),
                            std::abs(2.0 * (hp.omega0 + hp.omega1)), std::abs(2.0 * (hp.omega0 - hp.omega1))});
    if (std::abs(zr) <= 1e-12 * rmin) fail(ErrorKind::LatticePoint, "argument is a lattice point");
    return detail::wp_reduced(zr, hp.wd.g2, hp.wd.g3, rmin);
}

inline HalfPeriods half_periods(Complex t) {
    if (t == Complex(0.0) || t == Complex(1.0)) fail(ErrorKind::DegenerateCurve, "t must avoid 0 and 1");
    const double pi = std::numbers::pi;
    HalfPeriods hp;
    hp.t = t;
    hp.wd = weierstrass_data(t);
    Complex A = pi / (2.0 * agm(1.0, std::sqrt(1.0 - t)));
    Complex B = Complex(0, 1) * pi / (2.0 * agm(1.0, std::sqrt(t)));
    double rmin = std::min({std::abs(2.0 * A), std::abs(2.0 * B), std::abs(2.0 * (A + B)), std::abs(2.0 * (A - B))});
    // Identify which candidate half-period maps to which branch value.
    std::array<Complex, 3> cand{A, B, A + B};
    std::array<Complex, 3> target{hp.wd.e1, hp.wd.e2, hp.wd.e3};
    std::array<int, 3> label{-1, -1, -1};
    double scale = 1.0 + std::abs(t);
    for (int i = 0; i < 3; ++i) {
        Complex z = detail::reduce_mod_lattice(cand[i], A, B);
        Complex v = detail::wp_reduced(z, hp.wd.g2, hp.wd.g3, rmin).first;
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(v - target[j]) < std::abs(v - target[best])) best = j;
        if (std::abs(v - target[best]) > 1e-6 * scale)
            fail(ErrorKind::NonConvergence, "half-period identification failed");
        label[best] = i;
    }
    for (int j = 0; j < 3; ++j)
        if (label[j] < 0) fail(ErrorKind::NonConvergence, "half-period identification is ambiguous");
    hp.omega0 = cand[label[0]];
    hp.omega1 = cand[label[1]];
    if ((hp.omega0 / hp.omega1).imag() < 0) hp.omega0 = -hp.omega0;
    hp.P1 = 4.0 * hp.omega1;
    hp.P2 = 4.0 * hp.omega0;
    hp.tau = hp.P2 / hp.P1;
    return hp;
}

// Point of y^2 = x(x-1)(x-t) parametrized by z.
inline std::pair<Complex, Complex> to_legendre(Complex z, const HalfPeriods& hp) {
    auto [p, dp] = weierstrass_p(z, hp);
    return {p + hp.wd.shift, 0.5 * dp};
}

struct PicardSeed {
    Complex c0, c1;
};

// Which pair of half-periods the seed coefficients multiply.
enum class PicardLabeling { Omega0Omega1, Omega0OmegaT, Omega1OmegaT };

inline Complex picard_solution(const PicardSeed& seed, Complex t,
                               PicardLabeling labeling = PicardLabeling::Omega0Omega1) {
    HalfPeriods hp = half_periods(t);
    Complex wa = hp.omega0, wb = hp.omega1;
    if (labeling == PicardLabeling::Omega0OmegaT) wb = hp.omega0 + hp.omega1;
    if (labeling == PicardLabeling::Omega1OmegaT) {
        wa = hp.omega1;
        wb = hp.omega0 + hp.omega1;
    }
    // Integer seeds land on 2-torsion points, whose images 0, 1, t are known exactly.
    auto integral = [](Complex c, long& n) {
        if (c.imag() != 0.0 || c.real() != std::round(c.real()) || std::abs(c.real()) > 1e15) return false;
        n = static_cast<long>(c.real());
        return true;
    };
    long n0 = 0, n1 = 0;
    if (integral(seed.c0, n0) && integral(seed.c1, n1)) {
        // coordinates of wa and wb in the basis (omega0, omega1) modulo 2
        std::array<int, 2> ea{1, 0}, eb{0, 1};
        if (labeling == PicardLabeling::Omega0OmegaT) eb = {1, 1};
        if (labeling == PicardLabeling::Omega1OmegaT) ea = {0, 1}, eb = {1, 1};
        int m0 = static_cast<int>(((n0 * ea[0] + n1 * eb[0]) % 2 + 2) % 2);
        int m1 = static_cast<int>(((n0 * ea[1] + n1 * eb[1]) % 2 + 2) % 2);
        if (m0 == 0 && m1 == 0) fail(ErrorKind::AtInfinity, "seed maps to the point at infinity");
        if (m1 == 0) return 0.0;
        if (m0 == 0) return 1.0;
        return t;
    }
    Complex z = seed.c0 * wa + seed.c1 * wb;
    try {
        return to_legendre(z, hp).first;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::LatticePoint) fail(ErrorKind::AtInfinity, "seed maps to the point at infinity");
        throw;
    }
}

}  // namespace isolame
