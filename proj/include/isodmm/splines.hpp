#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isodmm/rational.hpp"

namespace isodmm {

/// Uniform maximum-continuity B-spline space on [0,1] with an open knot
/// vector. Basis functions are indexed 0..dimension()-1; the homogeneous
/// Dirichlet space drops the first and the last one.
class BSplineSpace {
 public:
  BSplineSpace(int degree, int elements);

  int degree() const { return degree_; }
  int elements() const { return elements_; }
  double h() const { return 1.0 / elements_; }
  int dimension() const { return elements_ + degree_; }
  int dirichlet_dimension() const { return elements_ + degree_ - 2; }

  /// Knot i measured in units of h (an integer in 0..N).
  int knot_index(int i) const;

 private:
  int degree_;
  int elements_;
};

/// Open uniform knot vector: 0 and 1 repeated p+1 times, interior knots k/N.
std::vector<double> knot_vector(int p, int N);
std::vector<Rational> knot_vector_exact(int p, int N);

/// Nonzero basis functions on one element. values[r] and derivatives[r]
/// belong to basis function first + r; derivatives are with respect to x.
template <class T>
struct LocalBasis {
  int first = 0;
  std::vector<T> values;
  std::vector<T> derivatives;
};

/// Cox-de Boor evaluation on element e at local coordinate xi in [0,1].
/// Working in units of h keeps all knots integral (exact for Rational).
template <class T>
LocalBasis<T> element_basis(const BSplineSpace& space, int e, const T& xi) {
  const int p = space.degree();
  if (e < 0 || e >= space.elements()) throw std::out_of_range("element index out of range");
  const T u = T(e) + xi;
  const int span = e + p;

  // table[d][r] = N_{span-d+r, d}(u)
  std::vector<std::vector<T>> table(p + 1, std::vector<T>(p + 1, T(0)));
  std::vector<T> left(p + 1, T(0)), right(p + 1, T(0));
  table[0][0] = T(1);
  for (int d = 1; d <= p; ++d) {
    left[d] = u - T(space.knot_index(span + 1 - d));
    right[d] = T(space.knot_index(span + d)) - u;
    T saved = T(0);
    for (int r = 0; r < d; ++r) {
      const T denom = right[r + 1] + left[d - r];
      const T tmp = table[d - 1][r] / denom;
      table[d][r] = saved + right[r + 1] * tmp;
      saved = left[d - r] * tmp;
    }
    table[d][d] = saved;
  }

  LocalBasis<T> out;
  out.first = e;
  out.values = table[p];
  out.derivatives.assign(p + 1, T(0));
  const T scale = T(space.elements());
  for (int r = 0; r <= p; ++r) {
    const int j = e + r;
    T d = T(0);
    const int den1 = space.knot_index(j + p) - space.knot_index(j);
    const int den2 = space.knot_index(j + p + 1) - space.knot_index(j + 1);
    if (r >= 1 && den1 != 0) d += T(p) * table[p - 1][r - 1] / T(den1);
    if (r <= p - 1 && den2 != 0) d -= T(p) * table[p - 1][r] / T(den2);
    out.derivatives[r] = d * scale;
  }
  return out;
}

namespace detail {
inline int floor_to_int(double x) { return static_cast<int>(std::floor(x)); }
inline int floor_to_int(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return static_cast<int>(q.get_si());
}

/// Element containing x, using the left limit at x = 1.
template <class T>
std::pair<int, T> locate(const BSplineSpace& space, const T& x) {
  if (x < T(0) || x > T(1)) throw std::out_of_range("evaluation point outside [0,1]");
  const T scaled = x * T(space.elements());
  int e = floor_to_int(scaled);
  if (e >= space.elements()) e = space.elements() - 1;
  const T xi = scaled - T(e);
  return {e, xi};
}

template <class T>
T pick(int j, int first, const std::vector<T>& values) {
  const int r = j - first;
  if (r < 0 || r >= static_cast<int>(values.size())) return T(0);
  return values[r];
}

inline void check_index(const BSplineSpace& space, int j) {
  if (j < 0 || j >= space.dimension()) throw std::out_of_range("basis index out of range");
}
}  // namespace detail

template <class T>
T eval_basis(const BSplineSpace& space, int j, const T& x) {
  detail::check_index(space, j);
  const auto [e, xi] = detail::locate(space, x);
  const auto local = element_basis(space, e, xi);
  return detail::pick(j, local.first, local.values);
}

template <class T>
T eval_basis_derivative(const BSplineSpace& space, int j, const T& x) {
  detail::check_index(space, j);
  const auto [e, xi] = detail::locate(space, x);
  const auto local = element_basis(space, e, xi);
  return detail::pick(j, local.first, local.derivatives);
}

/// Degree-p cardinal B-spline with knots 0,1,...,p+1.
/// The Rational overload uses the truncated-power form and is exact; the
/// double overload uses the two-term recursion.
Rational cardinal_value(int p, const Rational& t);
double cardinal_value(int p, double t);

/// Derivative of the cardinal B-spline: M_{p-1}(t) - M_{p-1}(t-1).
double cardinal_derivative(int p, double t);

}  // namespace isodmm
