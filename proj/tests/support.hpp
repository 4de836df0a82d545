#pragma once

#include <complex>
#include <functional>
#include <random>
#include <string>

#include "isolame/numcore/error.hpp"
#include "isolame/numcore/scalar.hpp"
#include "isolame/pvi.hpp"

namespace isolame::testing {

// Fixed seed: every run draws the same "random" inputs.
class Rng {
public:
    explicit Rng(unsigned long seed = 20261014UL) : gen_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    Complex complex(double r) { return {real(-r, r), real(-r, r)}; }

    // num / den with |num| <= 30 and 1 <= den <= 12
    Rational rational(int span = 30, int den = 12) {
        Rational r(integer(-span, span), integer(1, den));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int span = 30, int den = 12) {
        for (;;) {
            Rational r = rational(span, den);
            if (sgn(r) != 0) return r;
        }
    }

    // (t, q, p) with t not in {0,1}, q not in {0,1,t}, p != 0
    PhasePoint<Rational> phase_point() {
        PhasePoint<Rational> pt;
        do pt.t = rational(); while (pt.t == 0 || pt.t == 1);
        do pt.q = rational(); while (pt.q == 0 || pt.q == 1 || pt.q == pt.t);
        pt.p = nonzero_rational();
        return pt;
    }

    PviParams<Rational> params() { return make_params<Rational>(rational(), rational(), rational(), rational()); }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline Rational Q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// Kind of the isolame::Error thrown by f, or nullopt-like sentinel when nothing was thrown.
inline std::string thrown_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return error_name(e.kind());
    }
    return "none";
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// (f, f', f'') at t from central differences, Richardson-extrapolated once (h and h/2).
template <class F>
Lift<Complex> fd_lift(F&& f, Complex t, double h) {
    const Complex f0 = f(t);
    const Complex fp = f(t + h), fm = f(t - h), fp2 = f(t + h / 2), fm2 = f(t - h / 2);
    const Complex d1h = (fp - fm) / (2 * h), d1h2 = (fp2 - fm2) / h;
    const Complex d2h = (fp - 2.0 * f0 + fm) / (h * h), d2h2 = (fp2 - 2.0 * f0 + fm2) / (h * h / 4);
    return {f0, (4.0 * d1h2 - d1h) / 3.0, (4.0 * d2h2 - d2h) / 3.0};
}

// |lambda'' - rhs| / (1 + |lambda''|), the normalization used by pvi_residual.
inline double lift_residual(const PviParams<Complex>& P, Complex t, const Lift<Complex>& L) {
    return std::abs(L.lam_ddot - pvi_rhs(P, t, L.lam, L.lam_dot)) / (1.0 + std::abs(L.lam_ddot));
}

// Step for finite differences in t: large enough that rounding in f stays below ~1e-8 in f''.
inline double fd_step(Complex t) { return 1e-3 * std::max(1.0, std::abs(t)); }

// The flow through sample s evaluated at t, by a short integration from s.
inline PhasePoint<Complex> flow_to(const PviParams<Complex>& P, const PhasePoint<Complex>& s, Complex t) {
    if (std::abs(t - s.t) < 1e-12 * std::max(1.0, std::abs(t))) return s;
    OdeConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-15;
    return flow(P, s, PlanePath::segment(s.t, t), cfg).end();
}

// PVI residual of the image of a flow under a pointwise map, at the image of sample s.
// src_t maps the target time back to the source time; map sends a source point to its image.
template <class SrcT, class Map>
double transported_residual(const PviParams<Complex>& P, const PviParams<Complex>& Pt, const PhasePoint<Complex>& s,
                            SrcT&& src_t, Map&& map) {
    const Complex t_img = map(s).t;
    auto qt = [&](Complex tau) { return map(flow_to(P, s, src_t(tau))).q; };
    return lift_residual(Pt, t_img, fd_lift(qt, t_img, fd_step(t_img)));
}

}  // namespace isolame::testing
