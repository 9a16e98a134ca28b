#include "isodmm/rational.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace isodmm {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Rational power_over_factorial(int k, int e) {
  BigInt num;
  BigInt base = k;
  mpz_pow_ui(num.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, factorial(e));
  r.canonicalize();
  return r;
}

bool recover_fraction(double x, long max_den, double rel_tol, Rational& out) {
  if (!std::isfinite(x)) return false;
  // Convergents h/k of the continued fraction of x.
  long h_prev = 1, h = static_cast<long>(std::floor(x));
  long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  const double scale = std::max(std::abs(x), 1e-300);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= rel_tol * scale) {
      out = make_rational(h, k);
      return true;
    }
    if (frac < 1e-300) break;
    const double inv = 1.0 / frac;
    const long a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long h_next = a * h + h_prev;
    const long k_next = a * k + k_prev;
    if (k_next > max_den || k_next <= 0) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return false;
}

std::string format_scientific(double x, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant - 1, x);
  return buf;
}

std::string format_decimal(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

}  // namespace isodmm
