#pragma once

#include <stdexcept>
#include <vector>

#include "isodmm/rational.hpp"
#include "isodmm/stencils.hpp"

namespace isodmm {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact Gaussian elimination with row pivoting on the first nonzero entry.
std::vector<Rational> solve_rational_system(RationalMatrix a, std::vector<Rational> b);

Rational determinant(RationalMatrix a);

/// aleph(m,k) = k^{2m}/(2m)!, aleph_tilde(m,k) = k^{2m+2}/(2m+2)!, m,k = 1..n
/// (stored zero-based).
struct DmmSystem {
  int n = 0;
  RationalMatrix aleph;
  RationalMatrix aleph_tilde;

  explicit DmmSystem(int n);
};

/// Mass stencil whose order-2p dispersion term vanishes. Off-center entries
/// solve aleph * b = -aleph_tilde * a; the center restores a unit row sum.
Stencil dmm_stencil(int p);

/// sum_k (k^{2m}/(2m)! A + k^{2m-2}/(2m-2)! B_dmm) = 0 for m = 2..p+1.
IdentityReport verify_dmm_identity(int p);

/// Coefficient c in omega_h^2 h^2 - Lambda^2 = c Lambda^{order+2} + ...
/// for order 2p or 2p+2. The 2p+2 form assumes the 2p term vanishes.
Rational leading_coefficient(int p, const Stencil& a, const Stencil& b, int order);
double leading_coefficient(int p, const RealStencil& a, const RealStencil& b, int order);

}  // namespace isodmm
