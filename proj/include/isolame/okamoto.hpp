#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "isolame/fuchs.hpp"
#include "isolame/pvi.hpp"

namespace isolame {

template <class T>
struct SymmetryResult {
    PviParams<T> params;
    PhasePoint<T> point;
};

enum class Pole { Zero, One, T, Inf };

inline const char* pole_name(Pole w) {
    switch (w) {
        case Pole::Zero: return "0";
        case Pole::One: return "1";
        case Pole::T: return "t";
        case Pole::Inf: return "inf";
    }
    return "?";
}

template <class T>
SymmetryResult<T> apply_sign_change(Pole which, const PviParams<T>& P, const PhasePoint<T>& pt) {
    PhasePoint<T> r = pt;
    T k0 = P.k0, k1 = P.k1, kt = P.kt, ki = P.kinf;
    switch (which) {
        case Pole::Zero:
            check_boundary(pt.t, pt.q);
            r.p = pt.p - P.k0 / pt.q;
            k0 = -k0;
            break;
        case Pole::One:
            check_boundary(pt.t, pt.q);
            r.p = pt.p - P.k1 / (pt.q - T(1));
            k1 = -k1;
            break;
        case Pole::T:
            check_boundary(pt.t, pt.q);
            r.p = pt.p - P.kt / (pt.q - pt.t);
            kt = -kt;
            break;
        case Pole::Inf:
            ki = -ki;
            break;
    }
    return {make_params<T>(k0, k1, kt, ki), r};
}

enum class Permutation { P01, P1t, P0inf1t };

template <class T>
SymmetryResult<T> apply_permutation(Permutation which, const PviParams<T>& P, const PhasePoint<T>& pt) {
    if (isolame::is_zero(pt.t)) fail(ErrorKind::BoundaryPoint, "t = 0");
    const T& t = pt.t;
    const T& q = pt.q;
    const T& p = pt.p;
    switch (which) {
        case Permutation::P01:
            return {make_params<T>(P.k1, P.k0, P.kt, P.kinf), {T(1) - t, T(1) - q, -p}};
        case Permutation::P1t:
            return {make_params<T>(P.k0, P.kt, P.k1, P.kinf), {T(1) / t, q / t, t * p}};
        case Permutation::P0inf1t:
            if (isolame::is_zero(q)) fail(ErrorKind::BoundaryPoint, "q = 0");
            return {make_params<T>(P.kinf, P.kt, P.k1, P.k0), {t, t / q, -(q * (q * p + P.rho)) / t}};
    }
    fail(ErrorKind::InvalidArgument, "unknown permutation");
}

template <class T>
SymmetryResult<T> apply_s2(const PviParams<T>& P, const PhasePoint<T>& pt) {
    if (isolame::is_zero(pt.p)) fail(ErrorKind::ZeroMomentum, "p = 0");
    const T& r = P.rho;
    return {make_params<T>(P.k0 + r, P.k1 + r, P.kt + r, P.kinf + r), {pt.t, pt.q + r / pt.p, pt.p}};
}

template <class T>
SymmetryResult<T> apply_s2s1s2(const PviParams<T>& P, const PhasePoint<T>& pt) {
    if (isolame::is_zero(pt.p)) fail(ErrorKind::ZeroMomentum, "p = 0");
    const T s = P.rho + P.kinf;
    return {make_params<T>(P.k0 + s, P.k1 + s, P.kt + s, -P.rho), {pt.t, pt.q + s / pt.p, pt.p}};
}

// Optional parabolic choices for poles with theta = 0, indexed 0, 1, t; each line must be an eigenline.
template <class T>
struct ParabolicChoice {
    std::array<std::optional<PLine<T>>, 3> finite{};
};

namespace detail {

template <class T>
Mat2<T> frame_from_columns(const PLine<T>& u, const PLine<T>& v) {
    Mat2<T> B{u.u0, v.u0, u.u1, v.u1};
    T d = B.det();
    if (negligible(d, (magnitude(u.u0) + magnitude(u.u1)) * (magnitude(v.u0) + magnitude(v.u1))))
        fail(ErrorKind::DegenerateEigenline, "eigenlines coincide");
    return B.inverse();
}

// Eigenline of A for eigenvalue mu, with an optional explicit choice.
template <class T>
PLine<T> eigenline(const Mat2<T>& A, const T& mu, const std::optional<PLine<T>>& choice, bool theta_zero) {
    if (theta_zero) {
        // A nilpotent residue still has a unique eigenline; only A = 0 needs the explicit choice.
        if (!choice) return kernel_line(A);
        Vec2<T> w = A * Vec2<T>{choice->u0, choice->u1};
        // w must be parallel to the line (eigenvalue 0)
        if (!same_point(PLine<T>{w.x0, w.x1}, *choice) && !(negligible(w.x0, 1.0) && negligible(w.x1, 1.0)))
            fail(ErrorKind::NonEigenline, "parabolic choice is not an eigenline");
        return *choice;
    }
    return kernel_line(A - Mat2<T>::diag(mu, mu));
}

struct ElmStep {
    int pole;    // 0, 1, 2 = t
    bool prime;  // along l' (the +theta/2 eigenline) instead of l
    int eps;     // +1: infinity along ker(Ainf + thetainf/2), -1: along ker(Ainf - thetainf/2)
};

// One paired modification: finite pole c along v, infinity along u. Signed thetas are updated in place.
template <class T>
FuchsianSystem<T> elm_pair(const FuchsianSystem<T>& S, const ElmStep& st, const std::optional<PLine<T>>& choice) {
    const T two(2), half = T(1) / T(2);
    const int c = st.pole;
    const T thc = S.theta[c];
    const bool thc_zero = isolame::is_zero(thc);
    const T mu = st.prime ? T(thc / two) : T(-thc / two);
    PLine<T> v = eigenline(S.residue(c), mu, choice, thc_zero);
    const T thi = S.theta[3];
    const Mat2<T> Ai = S.Ainf();
    const T nu = st.eps > 0 ? T(-thi / two) : T(thi / two);
    if (isolame::is_zero(thi)) fail(ErrorKind::DegenerateEigenline, "theta_inf = 0");
    PLine<T> u = kernel_line(Ai - Mat2<T>::diag(nu, nu));
    Mat2<T> C = frame_from_columns(u, v);
    Mat2<T> Ci = C.inverse();
    std::array<Mat2<T>, 3> B;
    for (int j = 0; j < 3; ++j) B[j] = C * S.residue(j) * Ci;
    const T xc = S.pole(c);
    FuchsianSystem<T> R = S;
    T top(0);
    for (int j = 0; j < 3; ++j) {
        if (j == c) continue;
        const T dj = S.pole(j) - xc;
        R.residue(j) = {B[j].a, B[j].b / dj, dj * B[j].c, B[j].d};
        top += B[j].b / (xc - S.pole(j));
    }
    R.residue(c) = {B[c].a - half, top, T(0), B[c].d + half};
    R.theta[c] = st.prime ? T(thc + T(1)) : T(thc - T(1));
    R.theta[3] = thi - T(st.eps);
    return R;
}

// Conjugate so that A_inf is lower triangular with diagonal (thetainf/2, -thetainf/2).
template <class T>
FuchsianSystem<T> normalize_infinity(const FuchsianSystem<T>& S) {
    const T h = S.theta[3] / T(2);
    if (isolame::is_zero(h)) fail(ErrorKind::DegenerateNormalization, "theta_inf = 0");
    const Mat2<T> Ai = S.Ainf();
    PLine<T> ep = kernel_line(Ai - Mat2<T>::diag(h, h));
    PLine<T> em = kernel_line(Ai + Mat2<T>::diag(h, h));
    Mat2<T> Pm{ep.u0, em.u0, ep.u1, em.u1};
    T d = Pm.det();
    if (isolame::is_zero(d)) fail(ErrorKind::DegenerateNormalization, "A_inf eigenvectors coincide");
    Mat2<T> Pi = Pm.inverse();
    FuchsianSystem<T> R = S;
    for (int j = 0; j < 3; ++j) R.residue(j) = Pi * S.residue(j) * Pm;
    return R;
}

}  // namespace detail

// Schlesinger shift: kappa -> kappa - n, computed by paired elementary transformations on the fuchsian system.
template <class T>
SymmetryResult<T> apply_elm_shift(const std::array<int, 4>& n, const PviParams<T>& P, const PhasePoint<T>& pt,
                                  const ParabolicChoice<T>& choice = {}) {
    if ((n[0] + n[1] + n[2] + n[3]) % 2 != 0) fail(ErrorKind::InvalidArgument, "elm shift needs even coordinate sum");
    check_boundary(pt.t, pt.q);
    if (n == std::array<int, 4>{0, 0, 0, 0}) return {P, pt};
    FuchsianSystem<T> S = system_from_pq(P, pt);
    for (int c = 0; c < 3; ++c)
        if (n[c] != 0 && isolame::is_zero(S.theta[c]) && !choice.finite[c])
            fail(ErrorKind::DegenerateEigenline, std::string("kappa at pole ") + pole_name(static_cast<Pole>(c)) +
                                                     " is 0; an explicit parabolic choice is required");
    std::vector<detail::ElmStep> steps;
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < std::abs(n[c]); ++k) steps.push_back({c, n[c] < 0, 0});
    const int F = static_cast<int>(steps.size());
    if (std::abs(n[3]) > F) {
        // Pad with pairs (l, then l') at a finite pole whose elm along l is defined.
        int c = -1;
        for (int j = 0; j < 3 && c < 0; ++j)
            if (!isolame::is_zero(S.theta[j]) && !isolame::is_zero(S.theta[j] - T(1))) c = j;
        for (int j = 0; j < 3 && c < 0; ++j)
            if (!isolame::is_zero(S.theta[j]) || choice.finite[j]) c = j;
        if (c < 0) fail(ErrorKind::DegenerateEigenline, "no finite pole available to pad the infinity shift");
        for (int k = 0; k < (std::abs(n[3]) - F) / 2; ++k) {
            steps.push_back({c, false, 0});
            steps.push_back({c, true, 0});
        }
    }
    const int total = static_cast<int>(steps.size());
    const int plus = (total + n[3]) / 2;
    for (int k = 0; k < total; ++k) steps[k].eps = k < plus ? 1 : -1;
    for (const auto& st : steps) {
        // Once theta moved off zero, the eigenline is determined again.
        auto ch = isolame::is_zero(S.theta[st.pole]) ? choice.finite[st.pole] : std::nullopt;
        S = detail::elm_pair(S, st, ch);
    }
    S = detail::normalize_infinity(S);
    PQTheta<T> r = pq_from_system(S);
    PviParams<T> Pn = make_params<T>(P.k0 - T(n[0]), P.k1 - T(n[1]), P.kt - T(n[2]), P.kinf - T(n[3]));
    return {Pn, {pt.t, r.q, r.p}};
}

enum class LetterKind { Sgn0, Sgn1, Sgnt, SgnInf, Perm01, Perm1t, Perm0Inf1t, S2, S2S1S2, ElmShift };

struct Letter {
    LetterKind kind;
    std::array<int, 4> n{0, 0, 0, 0};
};

using SymmetryWord = std::vector<Letter>;

inline std::string letter_name(const Letter& l) {
    switch (l.kind) {
        case LetterKind::Sgn0: return "sgn0";
        case LetterKind::Sgn1: return "sgn1";
        case LetterKind::Sgnt: return "sgnt";
        case LetterKind::SgnInf: return "sgninf";
        case LetterKind::Perm01: return "p01";
        case LetterKind::Perm1t: return "p1t";
        case LetterKind::Perm0Inf1t: return "p0i1t";
        case LetterKind::S2: return "s2";
        case LetterKind::S2S1S2: return "s2s1s2";
        case LetterKind::ElmShift:
            return "elm(" + std::to_string(l.n[0]) + "," + std::to_string(l.n[1]) + "," + std::to_string(l.n[2]) +
                   "," + std::to_string(l.n[3]) + ")";
    }
    return "?";
}

// Whitespace-separated letters: sgn0 sgn1 sgnt sgninf p01 p1t p0i1t s2 s2s1s2 elm(n0,n1,nt,ninf)
inline SymmetryWord parse_word(const std::string& text) {
    SymmetryWord w;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        size_t j = i;
        if (text.compare(i, 4, "elm(") == 0) {
            j = text.find(')', i);
            if (j == std::string::npos) fail(ErrorKind::InvalidArgument, "unterminated elm(...)");
            ++j;
        } else {
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        }
        std::string tok = text.substr(i, j - i);
        i = j;
        Letter l{LetterKind::Sgn0};
        if (tok == "sgn0") l.kind = LetterKind::Sgn0;
        else if (tok == "sgn1") l.kind = LetterKind::Sgn1;
        else if (tok == "sgnt") l.kind = LetterKind::Sgnt;
        else if (tok == "sgninf") l.kind = LetterKind::SgnInf;
        else if (tok == "p01") l.kind = LetterKind::Perm01;
        else if (tok == "p1t") l.kind = LetterKind::Perm1t;
        else if (tok == "p0i1t") l.kind = LetterKind::Perm0Inf1t;
        else if (tok == "s2") l.kind = LetterKind::S2;
        else if (tok == "s2s1s2") l.kind = LetterKind::S2S1S2;
        else if (tok.rfind("elm(", 0) == 0) {
            l.kind = LetterKind::ElmShift;
            std::string inner = tok.substr(4, tok.size() - 5);
            std::array<int, 4> n{};
            size_t pos = 0;
            for (int k = 0; k < 4; ++k) {
                size_t comma = inner.find(',', pos);
                std::string part = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try {
                    size_t used = 0;
                    n[k] = std::stoi(part, &used);
                    while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
                    if (used != part.size()) throw std::invalid_argument(part);
                } catch (const std::exception&) {
                    fail(ErrorKind::InvalidArgument, "bad elm tuple '" + tok + "'");
                }
                if ((k < 3) != (comma != std::string::npos)) fail(ErrorKind::InvalidArgument, "elm needs 4 integers");
                pos = comma == std::string::npos ? inner.size() : comma + 1;
            }
            if ((n[0] + n[1] + n[2] + n[3]) % 2 != 0)
                fail(ErrorKind::InvalidArgument, "elm tuple must have even coordinate sum");
            l.n = n;
        } else {
            fail(ErrorKind::InvalidArgument, "unknown symmetry letter '" + tok + "'");
        }
        w.push_back(l);
    }
    return w;
}

template <class T>
SymmetryResult<T> apply_letter(const Letter& l, const PviParams<T>& P, const PhasePoint<T>& pt,
                               const ParabolicChoice<T>& choice = {}) {
    switch (l.kind) {
        case LetterKind::Sgn0: return apply_sign_change(Pole::Zero, P, pt);
        case LetterKind::Sgn1: return apply_sign_change(Pole::One, P, pt);
        case LetterKind::Sgnt: return apply_sign_change(Pole::T, P, pt);
        case LetterKind::SgnInf: return apply_sign_change(Pole::Inf, P, pt);
        case LetterKind::Perm01: return apply_permutation(Permutation::P01, P, pt);
        case LetterKind::Perm1t: return apply_permutation(Permutation::P1t, P, pt);
        case LetterKind::Perm0Inf1t: return apply_permutation(Permutation::P0inf1t, P, pt);
        case LetterKind::S2: return apply_s2(P, pt);
        case LetterKind::S2S1S2: return apply_s2s1s2(P, pt);
        case LetterKind::ElmShift: return apply_elm_shift(l.n, P, pt, choice);
    }
    fail(ErrorKind::InvalidArgument, "unknown letter");
}

// Left-to-right composition.
template <class T>
SymmetryResult<T> apply_word(const SymmetryWord& w, const PviParams<T>& P, const PhasePoint<T>& pt,
                             const ParabolicChoice<T>& choice = {}) {
    SymmetryResult<T> r{P, pt};
    for (const auto& l : w) r = apply_letter(l, r.params, r.point, choice);
    return r;
}

}  // namespace isolame
