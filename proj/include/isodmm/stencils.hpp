#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "isodmm/rational.hpp"

namespace isodmm {

enum class StencilKind { stiffness, mass };

/// Symmetric interior Gram row of a degree-p spline basis.
/// values[k] is the entry at offset k (k = 0..p); offset -k is implied.
/// Stiffness entries are scaled by h, mass entries by 1/h.
template <class T>
struct BasicStencil {
  int degree = 0;
  StencilKind kind = StencilKind::mass;
  std::vector<T> values;

  /// Entry at signed offset k; zero outside the support.
  T at(int k) const {
    const int a = std::abs(k);
    if (a >= static_cast<int>(values.size())) return T(0);
    return values[a];
  }

  /// Sum over all offsets -p..p.
  T row_sum() const {
    T s = values.empty() ? T(0) : values[0];
    for (std::size_t k = 1; k < values.size(); ++k) s += T(2) * values[k];
    return s;
  }
};

using Stencil = BasicStencil<Rational>;
using RealStencil = BasicStencil<double>;

RealStencil to_real(const Stencil& s);

/// Exact mass stencil B_p via the degree recursion starting from B_0 = [1].
Stencil mass_stencil(int p);

/// Exact stiffness stencil A_p = 2 B_{p-1}^k - B_{p-1}^{k+1} - B_{p-1}^{k-1}.
Stencil stiffness_stencil(int p);

/// sum_{k=1}^p k^e / e! * s[k]
Rational half_moment(const Stencil& s, int e);
double half_moment(const RealStencil& s, int e);

struct IdentityCheck {
  std::string identity;
  int p = 0;
  int m = 0;  ///< 0 when the identity carries no order index
  Rational residual;
  bool passed() const { return residual == 0; }
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  std::size_t failures() const;
  void append(const IdentityReport& other);
  void add(std::string identity, int p, int m, Rational residual);
};

/// Row-sum identities, the second-moment identities for A and B, and the
/// agreement of the mass recursion with cardinal spline values.
IdentityReport verify_base_identities(int p);

/// sum_k (k^{2m}/(2m)! A + k^{2m-2}/(2m-2)! B) = 0 for m = 2..p, and the
/// vanishing of the derived coefficients C_{2m}, m = 2..p.
IdentityReport verify_ab_identity(int p);

/// Entry that breaks the expected sign pattern (mass > 0, stiffness center
/// > 0, stiffness off-center < 0). The pattern is observed, not implied by
/// any identity, and fails for the stiffness from p = 5 on.
struct SignFlag {
  StencilKind kind;
  int p = 0;
  int k = 0;
  Rational value;
};

std::vector<SignFlag> sign_pattern_flags(int p);

/// Integer sequences F^q_{p,m} and G^q_{p,m,k} of the mass-recursion
/// bookkeeping. F[q] for q = 0..p-2; G[q][k] for k = 0..p-1-q.
struct FGLedger {
  int p = 0;
  int m = 0;
  std::vector<BigInt> F;
  std::vector<std::vector<BigInt>> G;
};

FGLedger fg_ledger(int p, int m);

/// Checks 2F^q_{p+1,m} - G^q_{p+1,m,0} = 0 (q = 1..p-2) and
/// 4F^{p-2}_{p,m} + G^{p-2}_{p,m,1} = 0 for 2 <= m <= p <= p_max, m <= m_max.
IdentityReport fg_verify(int p_max, int m_max);

}  // namespace isodmm
