#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isodmm/stencils.hpp"

namespace isodmm {

/// Rule on the reference element [0,1]. `exactness` is the largest monomial
/// degree integrated exactly. Nodes and weights are kept in long double: the
/// blending parameters are ratios of heavily cancelling moment sums. DMM rules are not polynomially exact beyond
/// degree 0 but reproduce the degree-`stencil_degree` interior stencils.
struct QuadratureRule {
  std::string label;
  std::vector<long double> nodes;
  std::vector<long double> weights;
  int exactness = 0;
  int stencil_degree = 0;

  std::size_t size() const { return nodes.size(); }
  double weight_sum() const;
  double apply(const std::function<double(double)>& f) const;
  /// Degree p for which the interior stiffness stencil is reproduced.
  bool stiffness_exact_for(int p) const {
    return exactness >= 2 * p - 2 || stencil_degree == p;
  }
};

QuadratureRule gauss_legendre(int m);
/// m >= 2; both endpoints are nodes.
QuadratureRule gauss_lobatto(int m);
/// Fixed node at the left endpoint 0.
QuadratureRule gauss_radau(int m);

/// Largest error |Q(x^d) - 1/(d+1)| over d = 0..degree.
double monomial_error(const QuadratureRule& rule, int degree);
bool verify_exactness(const QuadratureRule& rule, double tol = 1e-13);

/// Two-node (one-node for p = 1) rules reproducing the interior stiffness
/// stencil and the DMM mass stencil. branch = +1 or -1 picks the sign of the
/// off-center node.
QuadratureRule dmm_rule(int p, int branch = 1);

struct BlendedRule {
  QuadratureRule rule1;
  QuadratureRule rule2;
  double tau = 1.0;

  /// Single node/weight list with weights tau*w1 and (1-tau)*w2.
  QuadratureRule combined() const;
  double apply(const std::function<double(double)>& f) const;
};

BlendedRule blend(const QuadratureRule& rule1, const QuadratureRule& rule2, double tau);

/// Interior Gram rows computed by applying the rule on each of the p+1
/// elements in the support of an interior basis function.
RealStencil quadrature_mass_stencil(int p, const QuadratureRule& rule);
RealStencil quadrature_stiffness_stencil(int p, const QuadratureRule& rule);
/// Same as quadrature_mass_stencil without rounding to double.
std::vector<long double> quadrature_mass_row(int p, const QuadratureRule& rule);

struct DegenerateBlendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// tau such that tau*B_exact + (1-tau)*B_q has no order-2p dispersion term.
double optimal_tau(int p, const Stencil& b_exact, const RealStencil& b_q);
/// tau for tau*Q1 + (1-tau)*Q2 given the two quadrature mass stencils.
double optimal_tau(int p, const RealStencil& b1, const RealStencil& b2);

/// gg = (G_{p+1}, G_p), gl = (G_{p+1}, L_{p+1}), gr = (G_{p+1}, R_p),
/// pl = (G_p, L_{p+1}), pr = (G_p, R_p), lr = (L_{p+1}, R_p).
enum class BlendPair { gg, gl, gr, pl, pr, lr };

BlendPair parse_blend_pair(const std::string& label);
std::string to_string(BlendPair pair);
std::pair<QuadratureRule, QuadratureRule> pair_rules(int p, BlendPair pair);
double pair_tau(int p, BlendPair pair);
BlendedRule optimal_blend(int p, BlendPair pair);

/// Linear conditions on (tau1, tau2), tau3 = 1 - tau1 - tau2, for a blend of
/// three rules to cancel both the order-2p and order-2p+2 dispersion terms.
/// Each row is scaled so its tau1 coefficient is 1.
struct TripleBlendReport {
  int p = 0;
  std::vector<std::string> labels;
  double row[2][3] = {{0, 0, 0}, {0, 0, 0}};  ///< tau1 coef, tau2 coef, rhs
  double determinant = 0.0;
  double residual = 0.0;  ///< least-squares residual norm
  bool consistent = false;
};

TripleBlendReport triple_blend_check(int p, const QuadratureRule& q1, const QuadratureRule& q2,
                                     const QuadratureRule& q3);

}  // namespace isodmm
