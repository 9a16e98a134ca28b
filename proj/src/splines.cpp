#include "isodmm/splines.hpp"

#include <algorithm>
#include <string>

namespace isodmm {

BSplineSpace::BSplineSpace(int degree, int elements) : degree_(degree), elements_(elements) {
  if (degree < 1) throw std::invalid_argument("B-spline degree must be at least 1");
  if (elements < 2) throw std::invalid_argument("number of elements must be at least 2");
}

int BSplineSpace::knot_index(int i) const {
  return std::clamp(i - degree_, 0, elements_);
}

std::vector<double> knot_vector(int p, int N) {
  const BSplineSpace space(p, N);
  std::vector<double> knots(N + 2 * p + 1);
  for (int i = 0; i < static_cast<int>(knots.size()); ++i) {
    knots[i] = static_cast<double>(space.knot_index(i)) / N;
  }
  return knots;
}

std::vector<Rational> knot_vector_exact(int p, int N) {
  const BSplineSpace space(p, N);
  std::vector<Rational> knots(N + 2 * p + 1);
  for (int i = 0; i < static_cast<int>(knots.size()); ++i) {
    knots[i] = make_rational(space.knot_index(i), N);
  }
  return knots;
}

Rational cardinal_value(int p, const Rational& t) {
  if (p < 0) throw std::invalid_argument("cardinal B-spline degree must be nonnegative");
  if (t <= 0 || t >= p + 1) {
    // Degree 0 is the half-open indicator of [0,1).
    if (p == 0 && t == 0) return Rational(1);
    return Rational(0);
  }
  // M_p(t) = 1/p! * sum_i (-1)^i C(p+1,i) (t-i)_+^p
  Rational sum = 0;
  BigInt binom = 1;
  for (int i = 0; i <= p + 1; ++i) {
    const Rational shifted = t - i;
    if (shifted > 0) {
      Rational power = 1;
      for (int e = 0; e < p; ++e) power *= shifted;
      if (i % 2 == 0) {
        sum += Rational(binom) * power;
      } else {
        sum -= Rational(binom) * power;
      }
    }
    binom = binom * (p + 1 - i) / (i + 1);
  }
  Rational result = sum / Rational(factorial(p));
  result.canonicalize();
  return result;
}

double cardinal_value(int p, double t) {
  if (p < 0) throw std::invalid_argument("cardinal B-spline degree must be nonnegative");
  if (p == 0) return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
  if (t <= 0.0 || t >= p + 1.0) return 0.0;
  return (t * cardinal_value(p - 1, t) + (p + 1.0 - t) * cardinal_value(p - 1, t - 1.0)) / p;
}

double cardinal_derivative(int p, double t) {
  if (p < 1) throw std::invalid_argument("cardinal derivative needs degree at least 1");
  return cardinal_value(p - 1, t) - cardinal_value(p - 1, t - 1.0);
}

}  // namespace isodmm
