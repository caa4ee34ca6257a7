#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace cltwe {

// Dense square integer matrix, row-major rows.
using IntMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free Gaussian elimination (Bareiss); exact over Z.
mpz_class bareiss_determinant(IntMatrix m);

// Characteristic polynomial of V = W * Wp^{-1}, computed without inverting Wp:
// det(xI - V) = det(x Wp - W) / det(Wp). The pencil determinant is sampled at
// x = 0..n and interpolated exactly over Q. Coefficients are returned
// lowest degree first (monic, degree n).
//
// Returns std::nullopt when Wp is singular or the quotient is not integral.
std::optional<std::vector<mpz_class>> pencil_charpoly(const IntMatrix& w, const IntMatrix& wp);

mpz_class eval_poly(std::span<const mpz_class> coeffs, const mpz_class& x);

// Integer roots in the open interval (-bound, bound) by exhaustive scan, in
// increasing order. Stops once deg(poly) roots are found.
std::vector<mpz_class> integer_roots_scan(std::span<const mpz_class> coeffs, const mpz_class& bound);

}  // namespace cltwe
