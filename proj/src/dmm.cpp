#include "isodmm/dmm.hpp"

#include <string>
#include <utility>

namespace isodmm {

namespace {

void check_square(const RationalMatrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size()) throw std::invalid_argument("matrix is not square");
  }
}

template <class S, class T>
T signed_leading(int p, const S& a, const S& b, int order) {
  if (a.degree != p || b.degree != p) throw std::invalid_argument("stencil degree mismatch");
  if (order == 2 * p) {
    const T s = half_moment(a, 2 * p + 2) + half_moment(b, 2 * p);
    return (p % 2 == 0 ? T(-2) : T(2)) * s;
  }
  if (order == 2 * p + 2) {
    const T s = half_moment(a, 2 * p + 4) + half_moment(b, 2 * p + 2);
    return (p % 2 == 0 ? T(2) : T(-2)) * s;
  }
  throw std::invalid_argument("order must be 2p or 2p+2");
}

}  // namespace

std::vector<Rational> solve_rational_system(RationalMatrix a, std::vector<Rational> b) {
  check_square(a);
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("right-hand side has the wrong length");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("singular rational system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
    x[i].canonicalize();
  }
  return x;
}

Rational determinant(RationalMatrix a) {
  check_square(a);
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  det.canonicalize();
  return det;
}

DmmSystem::DmmSystem(int size) : n(size) {
  if (size < 1) throw std::invalid_argument("system dimension must be positive");
  aleph.assign(n, std::vector<Rational>(n));
  aleph_tilde.assign(n, std::vector<Rational>(n));
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      aleph[m - 1][k - 1] = power_over_factorial(k, 2 * m);
      aleph_tilde[m - 1][k - 1] = power_over_factorial(k, 2 * m + 2);
    }
  }
  if (n <= 12 && determinant(aleph) == 0) {
    throw SingularMatrixError("aleph matrix is singular for n = " + std::to_string(n));
  }
}

Stencil dmm_stencil(int p) {
  const Stencil a = stiffness_stencil(p);
  const DmmSystem sys(p);
  std::vector<Rational> rhs(p);
  for (int m = 0; m < p; ++m) {
    Rational s = 0;
    for (int k = 0; k < p; ++k) s -= sys.aleph_tilde[m][k] * a.values[k + 1];
    rhs[m] = s;
  }
  const std::vector<Rational> off = solve_rational_system(sys.aleph, rhs);
  Stencil b{p, StencilKind::mass, std::vector<Rational>(p + 1)};
  Rational center = 1;
  for (int k = 1; k <= p; ++k) {
    b.values[k] = off[k - 1];
    center -= 2 * off[k - 1];
  }
  center.canonicalize();
  b.values[0] = center;
  return b;
}

IdentityReport verify_dmm_identity(int p) {
  const Stencil a = stiffness_stencil(p);
  const Stencil b = dmm_stencil(p);
  IdentityReport report;
  for (int m = 2; m <= p + 1; ++m) {
    report.add("DMM moment", p, m, half_moment(a, 2 * m) + half_moment(b, 2 * m - 2));
  }
  return report;
}

Rational leading_coefficient(int p, const Stencil& a, const Stencil& b, int order) {
  Rational c = signed_leading<Stencil, Rational>(p, a, b, order);
  c.canonicalize();
  return c;
}

double leading_coefficient(int p, const RealStencil& a, const RealStencil& b, int order) {
  return signed_leading<RealStencil, double>(p, a, b, order);
}

}  // namespace isodmm
