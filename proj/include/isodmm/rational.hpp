#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace isodmm {

/// Exact arbitrary-precision fraction, always kept in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "a/b", or "a" when the denominator is one.
inline std::string to_string(const Rational& r) {
  return r.get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

BigInt factorial(int n);

/// k^e / e! as an exact fraction.
Rational power_over_factorial(int k, int e);

/// Best rational approximation of x with denominator at most max_den, found
/// by continued fractions. Returns false when no candidate lies within
/// rel_tol of x.
bool recover_fraction(double x, long max_den, double rel_tol, Rational& out);

/// Fixed-width decimal rendering used by every text emitter (%.*e).
std::string format_scientific(double x, int significant = 6);
std::string format_decimal(double x, int precision = 16);

}  // namespace isodmm
