#include "cltwe/charpoly.hpp"

#include <stdexcept>
#include <utility>

namespace cltwe {

mpz_class bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(m[swap][k]) == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::optional<std::vector<mpz_class>> pencil_charpoly(const IntMatrix& w, const IntMatrix& wp) {
  const std::size_t n = w.size();
  if (wp.size() != n) throw std::invalid_argument("pencil_charpoly: size mismatch");

  // f(t) = det(t Wp - W) at t = 0..n.
  std::vector<mpq_class> values(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<unsigned long>(t) * wp[i][j] - w[i][j];
    }
    values[t] = bareiss_determinant(std::move(m));
  }

  // Newton divided differences on nodes 0..n, then expand to monomials.
  std::vector<mpq_class> dd = values;
  for (std::size_t level = 1; level <= n; ++level) {
    for (std::size_t i = n; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / mpq_class(static_cast<unsigned long>(level));
      if (i == level) break;
    }
  }
  std::vector<mpq_class> poly(n + 1, 0);
  poly[0] = dd[n];
  std::size_t deg = 0;
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (x - k) + dd[k]
    std::vector<mpq_class> next(n + 1, 0);
    for (std::size_t i = 0; i <= deg; ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * mpq_class(static_cast<unsigned long>(k));
    }
    next[0] += dd[k];
    poly = std::move(next);
    ++deg;
  }

  const mpq_class lead = poly[n];
  if (sgn(lead) == 0) return std::nullopt;
  std::vector<mpz_class> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    mpq_class c = poly[i] / lead;
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out[i] = c.get_num();
  }
  return out;
}

mpz_class eval_poly(std::span<const mpz_class> coeffs, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs[i];
  }
  return acc;
}

std::vector<mpz_class> integer_roots_scan(std::span<const mpz_class> coeffs, const mpz_class& bound) {
  std::vector<mpz_class> roots;
  if (coeffs.size() < 2) return roots;
  const std::size_t degree = coeffs.size() - 1;
  mpz_class acc;
  for (mpz_class x = -bound + 1; x < bound && roots.size() < degree; ++x) {
    acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
      mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), coeffs[i].get_mpz_t());
    }
    if (sgn(acc) == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace cltwe
