#pragma once

#include <vector>

#include "isolame/numcore/poly.hpp"

namespace isolame {

// Polynomial in w with Poly-in-x coefficients, ascending in w.
template <class T>
struct BivariatePoly {
    std::vector<Poly<T>> w_coeffs;

    int degree_w() const {
        for (size_t k = w_coeffs.size(); k-- > 0;)
            if (!w_coeffs[k].is_zero()) return static_cast<int>(k);
        return -1;
    }
    Poly<T> coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(w_coeffs.size())) ? w_coeffs[k] : Poly<T>();
    }
    // Value at (x, w).
    T operator()(const T& x, const T& w) const {
        T acc(0);
        for (size_t k = w_coeffs.size(); k-- > 0;) acc = acc * w + w_coeffs[k](x);
        return acc;
    }
};

// B^2 - 4AC for F = A w^2 + B w + C.
template <class T>
Poly<T> discriminant_in_w(const BivariatePoly<T>& F) {
    if (F.degree_w() != 2) fail(ErrorKind::NotQuadratic, "polynomial is not quadratic in w");
    const Poly<T> A = F.coeff(2), B = F.coeff(1), C = F.coeff(0);
    return B * B - T(4) * (A * C);
}

}  // namespace isolame
