#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "isolame/numcore/ode.hpp"
#include "isolame/numcore/scalar.hpp"

namespace isolame {

// Exponents kappa = (k0, k1, kt, kinf) with k0 + k1 + kt + kinf + 2 rho = 1.
template <class T>
struct PviParams {
    T k0{0}, k1{0}, kt{0}, kinf{0};
    T rho{0};

    // theta_i = kappa_i for finite poles, theta_inf = kinf + 1.
    T theta0() const { return k0; }
    T theta1() const { return k1; }
    T thetat() const { return kt; }
    T thetainf() const { return kinf + T(1); }
};

template <class T>
PviParams<T> make_params(const T& k0, const T& k1, const T& kt, const T& kinf) {
    PviParams<T> P;
    P.k0 = k0;
    P.k1 = k1;
    P.kt = kt;
    P.kinf = kinf;
    P.rho = (T(1) - k0 - k1 - kt - kinf) / T(2);
    return P;
}

inline PviParams<Complex> to_complex(const PviParams<Rational>& P) {
    return make_params<Complex>(to_complex(P.k0), to_complex(P.k1), to_complex(P.kt), to_complex(P.kinf));
}
inline PviParams<Complex> to_complex(const PviParams<Complex>& P) { return P; }

template <class T>
struct PhasePoint {
    T t{0}, q{0}, p{0};
};

template <class T>
void check_time(const T& t) {
    if (coincides(t, T(0)) || coincides(t, T(1))) fail(ErrorKind::BoundaryPoint, "t is 0 or 1");
}

template <class T>
void check_boundary(const T& t, const T& q) {
    check_time(t);
    if (coincides(q, T(0)) || coincides(q, T(1)) || coincides(q, t))
        fail(ErrorKind::BoundaryPoint, "q is one of 0, 1, t");
}

namespace detail {

// Pieces of H = Phi (p^2 - B p + C) and their partial derivatives.
template <class T>
struct HamParts {
    T Phi, B, C, Phi_q, B_q, C_q, Phi_t, B_t;
};

template <class T>
HamParts<T> ham_parts(const PviParams<T>& P, const T& t, const T& q) {
    check_boundary(t, q);
    HamParts<T> h;
    const T tt = t * (t - T(1));
    const T qq = q * (q - T(1));
    const T qt = q - t;
    const T rr = P.rho * (P.kinf + P.rho);
    h.Phi = qq * qt / tt;
    h.B = P.k0 / q + P.k1 / (q - T(1)) + (P.kt - T(1)) / qt;
    h.C = rr / qq;
    h.Phi_q = (T(3) * q * q - T(2) * (T(1) + t) * q + t) / tt;
    h.B_q = -P.k0 / (q * q) - P.k1 / ((q - T(1)) * (q - T(1))) - (P.kt - T(1)) / (qt * qt);
    h.C_q = -rr * (T(2) * q - T(1)) / (qq * qq);
    h.Phi_t = -qq / tt - qq * qt * (T(2) * t - T(1)) / (tt * tt);
    h.B_t = (P.kt - T(1)) / (qt * qt);
    return h;
}

}  // namespace detail

template <class T>
T hamiltonian(const PviParams<T>& P, const PhasePoint<T>& pt) {
    auto h = detail::ham_parts(P, pt.t, pt.q);
    return h.Phi * (pt.p * pt.p - h.B * pt.p + h.C);
}

// (dH/dp, -dH/dq)
template <class T>
std::pair<T, T> hamiltonian_field(const PviParams<T>& P, const PhasePoint<T>& pt) {
    auto h = detail::ham_parts(P, pt.t, pt.q);
    const T& p = pt.p;
    T dq = h.Phi * (T(2) * p - h.B);
    T Hq = h.Phi_q * (p * p - h.B * p + h.C) + h.Phi * (-h.B_q * p + h.C_q);
    return {dq, -Hq};
}

// Inverse of dq/dt = dH/dp in p.
template <class T>
T p_from_slope(const PviParams<T>& P, const T& t, const T& q, const T& qdot) {
    check_boundary(t, q);
    return (t * (t - T(1)) / (q * (q - T(1)) * (q - t)) * qdot + P.k0 / q + P.k1 / (q - T(1)) +
            (P.kt - T(1)) / (q - t)) /
           T(2);
}

// lambda'' given (t, lambda, lambda').
template <class T>
T pvi_rhs(const PviParams<T>& P, const T& t, const T& lam, const T& ld) {
    check_boundary(t, lam);
    const T one(1), two(2);
    const T l1 = lam - one, lt = lam - t, t1 = t - one;
    T a = (one / lam + one / l1 + one / lt) * ld * ld / two;
    T b = (one / t + one / t1 + one / lt) * ld;
    T c = lam * l1 * lt / (t * t * t1 * t1) *
          (P.kinf * P.kinf / two - P.k0 * P.k0 * t / (two * lam * lam) + P.k1 * P.k1 * t1 / (two * l1 * l1) +
           (one - P.kt * P.kt) * t * t1 / (two * lt * lt));
    return a - b + c;
}

template <class T>
struct Lift {
    T lam{0}, lam_dot{0}, lam_ddot{0};
};

// (q, q', q'') computed from the Hamiltonian field and its total t-derivative.
template <class T>
Lift<T> flow_lift(const PviParams<T>& P, const PhasePoint<T>& pt) {
    auto h = detail::ham_parts(P, pt.t, pt.q);
    auto [qd, pd] = hamiltonian_field(P, pt);
    const T w = T(2) * pt.p - h.B;
    Lift<T> L;
    L.lam = pt.q;
    L.lam_dot = qd;
    L.lam_ddot = h.Phi_t * w - h.Phi * h.B_t + (h.Phi_q * w - h.Phi * h.B_q) * qd + T(2) * h.Phi * pd;
    return L;
}

struct Trajectory {
    PviParams<Complex> params;
    std::vector<PhasePoint<Complex>> samples;
    PlanePath path;
    int detours = 0;

    const PhasePoint<Complex>& end() const { return samples.back(); }
};

namespace detail {

inline std::vector<PhasePoint<Complex>> flow_segment_samples(const PviParams<Complex>& P, Complex q, Complex p,
                                                             const PlanePath& path, const OdeConfig& cfg) {
    auto field = [&P](Complex t, const CState<2>& y) {
        auto [dq, dp] = hamiltonian_field(P, PhasePoint<Complex>{t, y[0], y[1]});
        return CState<2>{dq, dp};
    };
    auto sol = integrate_path<2>(field, CState<2>{q, p}, path, cfg);
    std::vector<PhasePoint<Complex>> out;
    out.reserve(sol.samples.size());
    for (const auto& s : sol.samples) {
        check_boundary(s.s, s.y[0]);
        out.push_back({s.s, s.y[0], s.y[1]});
    }
    return out;
}

}  // namespace detail

// Integrates the Hamiltonian system along a path in t. Raises BlowupError near a pole.
inline Trajectory flow(const PviParams<Complex>& P, const PhasePoint<Complex>& start, const PlanePath& path,
                       const OdeConfig& cfg = {}) {
    path.validate();
    if (std::abs(start.t - path.start()) > 1e-12 * std::max(1.0, std::abs(start.t)))
        fail(ErrorKind::InvalidArgument, "start.t must equal the first waypoint");
    check_boundary(start.t, start.q);
    Trajectory tr;
    tr.params = P;
    tr.path = path;
    tr.samples = detail::flow_segment_samples(P, start.q, start.p, path, cfg);
    return tr;
}

// Like flow, but on a blowup at the last good point t* the straight segment is rerouted around a
// semicircle of radius 0.1 |t*| centred at t*, first on the left of the direction of travel, then on
// the right; if both arcs blow up the radius is halved. Later poles on the same segment get their own detours.
inline Trajectory flow_with_detours(const PviParams<Complex>& P, const PhasePoint<Complex>& start,
                                    const PlanePath& path, const OdeConfig& cfg = {}, int max_detours = 32) {
    path.validate();
    check_boundary(start.t, start.q);
    Trajectory tr;
    tr.params = P;
    tr.samples.push_back(start);
    std::vector<Complex> taken{start.t};
    auto run = [&](const std::vector<Complex>& pts) {
        const PhasePoint<Complex> s0 = tr.samples.back();
        auto part = detail::flow_segment_samples(P, s0.q, s0.p, PlanePath(pts), cfg);
        tr.samples.insert(tr.samples.end(), part.begin() + 1, part.end());
        taken.insert(taken.end(), pts.begin() + 1, pts.end());
    };
    for (size_t seg = 1; seg < path.waypoints.size(); ++seg) {
        Complex a = path.waypoints[seg - 1];
        const Complex b = path.waypoints[seg];
        while (true) {
            Complex c;
            try {
                run({a, b});
                break;
            } catch (const BlowupError& e) {
                if (tr.detours >= max_detours) throw;
                c = e.last_good();
            }
            const Complex d = (b - a) / std::abs(b - a);
            double r = std::min({0.1 * std::abs(c), 0.9 * std::abs(c - a), 0.9 * std::abs(b - c)});
            if (r <= 1e-8) fail(ErrorKind::BlowupDetected, "pole too close to a waypoint for a detour");
            bool done = false;
            for (int shrink = 0; shrink < 4; ++shrink) {
                // approach along the segment; this part precedes the blowup
                const size_t keep = tr.samples.size(), keep_t = taken.size();
                run({a, c - r * d});
                for (Complex side : {Complex(0, 1), Complex(0, -1)}) {
                    std::vector<Complex> arc{c - r * d};
                    const int n = 16;
                    for (int k = 1; k < n; ++k) {
                        double ang = std::numbers::pi * k / n;
                        arc.push_back(c - r * d * std::cos(ang) + r * side * d * std::sin(ang));
                    }
                    arc.push_back(c + r * d);
                    try {
                        run(arc);
                        done = true;
                        break;
                    } catch (const BlowupError&) {
                    }
                }
                if (done) break;
                tr.samples.resize(keep);
                taken.resize(keep_t);
                r /= 2;
            }
            if (!done) fail(ErrorKind::BlowupDetected, "no detour around the pole succeeded");
            ++tr.detours;
            a = c + r * d;
        }
    }
    tr.path = PlanePath(taken);
    return tr;
}

// max over samples of |lambda'' - rhs| / (1 + |lambda''|)
template <class LiftFn>
double pvi_residual(const PviParams<Complex>& P, const Trajectory& traj, LiftFn&& lift) {
    double worst = 0.0;
    for (const auto& pt : traj.samples) {
        Lift<Complex> L = lift(pt);
        Complex rhs = pvi_rhs(P, pt.t, L.lam, L.lam_dot);
        worst = std::max(worst, std::abs(L.lam_ddot - rhs) / (1.0 + std::abs(L.lam_ddot)));
    }
    return worst;
}

inline double pvi_residual(const PviParams<Complex>& P, const Trajectory& traj) {
    return pvi_residual(P, traj, [&P](const PhasePoint<Complex>& pt) { return flow_lift(P, pt); });
}

}  // namespace isolame
