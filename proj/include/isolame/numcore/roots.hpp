#pragma once

#include <complex>
#include <utility>

#include "isolame/numcore/scalar.hpp"

namespace isolame {

// Both roots of a w^2 + b w + c, computed without cancellation.
inline std::pair<Complex, Complex> poly_roots2(const Complex& a, const Complex& b, const Complex& c) {
    if (a == Complex(0.0)) fail(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient is zero");
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in -b -/+ sq.
    if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;
    Complex qv = -0.5 * (b + sq);
    if (qv == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
    Complex r1 = qv / a;
    Complex r2 = c / qv;
    // Order: larger real part first, then larger imaginary part.
    if (r2.real() > r1.real() || (r2.real() == r1.real() && r2.imag() > r1.imag())) std::swap(r1, r2);
    return {r1, r2};
}

// Exact version; fails unless the discriminant is a rational square.
inline std::pair<Rational, Rational> poly_roots2_exact(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) == 0) fail(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient is zero");
    Rational disc = b * b - 4 * a * c;
    if (sgn(disc) < 0) fail(ErrorKind::InvalidArgument, "roots are not rational");
    mpz_class n = disc.get_num(), d = disc.get_den();
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    if (sn * sn != n || sd * sd != d) fail(ErrorKind::InvalidArgument, "roots are not rational");
    Rational s(sn, sd);
    s.canonicalize();
    Rational r1 = (-b + s) / (2 * a), r2 = (-b - s) / (2 * a);
    if (r2 > r1) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace isolame
