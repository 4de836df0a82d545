#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "isolame/numcore/scalar.hpp"

namespace isolame {

// Piecewise-linear path in the complex plane.
struct PlanePath {
    std::vector<Complex> waypoints;

    PlanePath() = default;
    PlanePath(std::initializer_list<Complex> w) : waypoints(w) { validate(); }
    explicit PlanePath(std::vector<Complex> w) : waypoints(std::move(w)) { validate(); }

    static PlanePath segment(Complex a, Complex b) { return PlanePath({a, b}); }

    void validate() const {
        if (waypoints.empty()) fail(ErrorKind::InvalidArgument, "path needs at least one waypoint");
        for (size_t k = 1; k < waypoints.size(); ++k)
            if (waypoints[k] == waypoints[k - 1])
                fail(ErrorKind::InvalidArgument, "consecutive path waypoints coincide");
    }
    PlanePath reversed() const {
        std::vector<Complex> w(waypoints.rbegin(), waypoints.rend());
        return PlanePath(std::move(w));
    }
    Complex start() const { return waypoints.front(); }
    Complex end() const { return waypoints.back(); }
    double length() const {
        double L = 0;
        for (size_t k = 1; k < waypoints.size(); ++k) L += std::abs(waypoints[k] - waypoints[k - 1]);
        return L;
    }
};

struct OdeConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.05;
    long max_steps = 200000;
    double blowup_threshold = 1e8;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || !(max_step > 0) || !(blowup_threshold > 0))
            fail(ErrorKind::InvalidArgument, "ODE tolerances must be positive");
        if (max_steps < 1) fail(ErrorKind::InvalidArgument, "max_steps must be at least 1");
    }
};

template <size_t N>
using CState = std::array<Complex, N>;

template <size_t N>
struct PathSample {
    Complex s;
    CState<N> y;
};

template <size_t N>
struct PathSolution {
    std::vector<PathSample<N>> samples;  // starts with the initial point; one entry per accepted step
    CState<N> final_state{};
    long steps = 0;
    long rejected = 0;
};

namespace detail {

template <size_t N>
CState<N> axpy(const CState<N>& y, double h, std::initializer_list<std::pair<double, const CState<N>*>> terms) {
    CState<N> out = y;
    for (const auto& [c, k] : terms)
        if (c != 0.0)
            for (size_t i = 0; i < N; ++i) out[i] += (h * c) * (*k)[i];
    return out;
}

template <size_t N>
bool state_ok(const CState<N>& y, double threshold) {
    for (const Complex& v : y) {
        double m = std::abs(v);
        if (!std::isfinite(m) || m > threshold) return false;
    }
    return true;
}

}  // namespace detail

// Dormand-Prince 5(4) with PI step control, along each segment of the path.
// `field(s, y)` returns dy/ds for complex s.
template <size_t N, class Field>
PathSolution<N> integrate_path(Field&& field, const CState<N>& y0, const PlanePath& path,
                               const OdeConfig& cfg = {}) {
    path.validate();
    cfg.validate();
    // Butcher tableau
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    PathSolution<N> sol;
    CState<N> y = y0;
    if (!detail::state_ok(y, cfg.blowup_threshold))
        throw BlowupError(path.start(), "initial state exceeds blowup threshold");
    sol.samples.push_back({path.start(), y});

    for (size_t seg = 1; seg < path.waypoints.size(); ++seg) {
        const Complex sa = path.waypoints[seg - 1];
        const Complex dir = path.waypoints[seg] - sa;
        const double L = std::abs(dir);
        // Rescaled field in the real parameter tau in [0, 1].
        auto g = [&](double tau, const CState<N>& yy) {
            CState<N> d = field(sa + tau * dir, yy);
            for (auto& v : d) v *= dir;
            return d;
        };
        const double hmax = std::min(1.0, cfg.max_step / L);
        double tau = 0.0;
        double h = std::min(hmax, 0.01);
        double err_prev = 1e-4;
        CState<N> k1 = g(0.0, y);
        while (tau < 1.0) {
            if (sol.steps + sol.rejected >= cfg.max_steps)
                fail(ErrorKind::StepLimitExceeded, "integrator exceeded max_steps");
            bool last = false;
            if (tau + h >= 1.0 - 1e-15) {
                h = 1.0 - tau;
                last = true;
            }
            CState<N> k2 = g(tau + c2 * h, detail::axpy<N>(y, h, {{a21, &k1}}));
            CState<N> k3 = g(tau + c3 * h, detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
            CState<N> k4 = g(tau + c4 * h, detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            CState<N> k5 =
                g(tau + c5 * h, detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            CState<N> k6 = g(tau + h, detail::axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                                                             {a65, &k5}}));
            CState<N> yn =
                detail::axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            CState<N> k7 = g(tau + h, yn);
            double err = 0.0;
            bool finite = true;
            for (size_t i = 0; i < N; ++i) {
                Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
                double r = std::abs(e) / sc;
                if (!std::isfinite(r)) finite = false;
                err = std::max(err, r);
            }
            if (finite && err <= 1.0) {
                tau = last ? 1.0 : tau + h;
                y = yn;
                k1 = k7;
                ++sol.steps;
                Complex s = sa + tau * dir;
                if (!detail::state_ok(y, cfg.blowup_threshold))
                    throw BlowupError(sol.samples.back().s, "solution magnitude exceeded threshold");
                sol.samples.push_back({s, y});
                double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
                fac = std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err, 1e-4);
                h = std::min(hmax, h * fac);
            } else {
                ++sol.rejected;
                double fac = finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
                h *= fac;
            }
            if (h * L < 1e-14 * std::max(1.0, std::abs(sa + tau * dir)))
                throw BlowupError(sol.samples.back().s, "step size underflow near a singularity");
        }
    }
    sol.final_state = y;
    return sol;
}

}  // namespace isolame
