#include "isodmm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isodmm/splines.hpp"

namespace isodmm {

namespace {

using Real = long double;

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<Real, Real> legendre(int n, Real x) {
  Real p0 = 1, p1 = x;
  if (n == 0) return {1, 0};
  for (int k = 2; k <= n; ++k) {
    const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

Real legendre_derivative(int n, Real x) {
  const auto [pn, pm] = legendre(n, x);
  return n * (x * pn - pm) / (x * x - 1);
}

// Roots of f strictly inside (-1,1): sign changes on a cosine grid, then
// bisection down to long-double resolution.
template <class F>
std::vector<Real> interior_roots(F f, int expected) {
  std::vector<Real> roots;
  if (expected == 0) return roots;
  const int samples = 64 * (expected + 2);
  const Real pi = std::numbers::pi_v<Real>;
  Real x_prev = -std::cos(pi / samples);
  Real f_prev = f(x_prev);
  for (int i = 2; i < samples; ++i) {
    const Real x = -std::cos(pi * i / samples);
    const Real fx = f(x);
    if (fx == 0) {
      roots.push_back(x);
    } else if ((f_prev < 0) != (fx < 0) && f_prev != 0) {
      Real lo = x_prev, hi = x, flo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<Real>::epsilon(); ++it) {
        const Real mid = (lo + hi) / 2;
        const Real fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back((lo + hi) / 2);
    }
    x_prev = x;
    f_prev = fx;
  }
  if (static_cast<int>(roots.size()) != expected) {
    throw std::runtime_error("quadrature root finder did not isolate every node");
  }
  return roots;
}

QuadratureRule to_unit_interval(std::string label, int exactness, const std::vector<Real>& x,
                                const std::vector<Real>& w) {
  QuadratureRule rule;
  rule.label = std::move(label);
  rule.exactness = exactness;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back((x[i] + 1) / 2);
    rule.weights.push_back(w[i] / 2);
  }
  return rule;
}

// Basis j = p of a space with 2p+1 elements has the cardinal support [0, p+1]
// and all its right neighbours are unaffected by the boundary knots.
template <bool Derivative>
std::vector<Real> gram_row(int p, const QuadratureRule& rule) {
  if (p < 1) throw std::invalid_argument("stencil degree must be at least 1");
  if (!rule.stiffness_exact_for(p)) {
    throw std::invalid_argument("rule " + rule.label + " cannot integrate the degree-" +
                                std::to_string(p) + " stiffness exactly");
  }
  const BSplineSpace space(p, 2 * p + 1);
  const Real scale = Derivative ? Real(1) / space.elements() : Real(1);
  std::vector<Real> acc(p + 1, 0);
  for (int e = 0; e <= p; ++e) {
    const int r = p - e;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto local = element_basis<Real>(space, e, rule.nodes[q]);
      const auto& v = Derivative ? local.derivatives : local.values;
      for (int k = 0; r + k <= p; ++k) {
        acc[k] += rule.weights[q] * v[r] * v[r + k] * scale * scale;
      }
    }
  }
  return acc;
}

RealStencil rounded(int p, StencilKind kind, const std::vector<Real>& row) {
  RealStencil s{p, kind, {}};
  for (const Real a : row) s.values.push_back(static_cast<double>(a));
  return s;
}

Real to_real(const Rational& r) {
  // Split so that long double keeps all its digits.
  const double hi = r.get_d();
  const Rational rest = r - Rational(hi);
  return Real(hi) + Real(rest.get_d());
}

// Order-2p dispersion term (up to sign and factor 2) of a mass row.
template <class V>
Real blend_target(int p, const V& b) {
  Real s = to_real(half_moment(stiffness_stencil(p), 2 * p + 2));
  for (int k = 1; k <= p; ++k) s += to_real(power_over_factorial(k, 2 * p)) * Real(b[k]);
  return s;
}

double tau_from_targets(Real t1, Real t2) {
  const Real denom = t2 - t1;
  if (std::abs(denom) < 1e-14L) {
    throw DegenerateBlendError("blended rules give the same order-2p dispersion term");
  }
  return static_cast<double>(t2 / denom);
}

}  // namespace

double QuadratureRule::weight_sum() const {
  Real s = 0;
  for (Real w : weights) s += w;
  return static_cast<double>(s);
}

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  Real s = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += weights[i] * f(static_cast<double>(nodes[i]));
  }
  return static_cast<double>(s);
}

QuadratureRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  const auto x = interior_roots([m](Real t) { return legendre(m, t).first; }, m);
  std::vector<Real> w;
  for (Real t : x) {
    const Real d = legendre_derivative(m, t);
    w.push_back(2 / ((1 - t * t) * d * d));
  }
  return to_unit_interval("G" + std::to_string(m), 2 * m - 1, x, w);
}

QuadratureRule gauss_lobatto(int m) {
  if (m < 2) throw std::invalid_argument("Gauss-Lobatto needs at least two nodes");
  std::vector<Real> x{-1};
  const auto inner = interior_roots([m](Real t) { return legendre_derivative(m - 1, t); }, m - 2);
  x.insert(x.end(), inner.begin(), inner.end());
  x.push_back(1);
  std::vector<Real> w;
  for (Real t : x) {
    const Real pm = legendre(m - 1, t).first;
    w.push_back(Real(2) / (Real(m) * (m - 1) * pm * pm));
  }
  return to_unit_interval("L" + std::to_string(m), 2 * m - 3, x, w);
}

QuadratureRule gauss_radau(int m) {
  if (m < 1) throw std::invalid_argument("Gauss-Radau needs at least one node");
  std::vector<Real> x{-1};
  const auto inner = interior_roots(
      [m](Real t) { return legendre(m, t).first + legendre(m - 1, t).first; }, m - 1);
  x.insert(x.end(), inner.begin(), inner.end());
  std::vector<Real> w{Real(2) / (Real(m) * m)};
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Real pm = legendre(m - 1, x[i]).first;
    w.push_back((1 - x[i]) / (Real(m) * m * pm * pm));
  }
  return to_unit_interval("R" + std::to_string(m), 2 * m - 2, x, w);
}

double monomial_error(const QuadratureRule& rule, int degree) {
  double worst = 0;
  for (int d = 0; d <= degree; ++d) {
    const double q = rule.apply([d](double t) { return std::pow(t, d); });
    worst = std::max(worst, std::abs(q - 1.0 / (d + 1)));
  }
  return worst;
}

bool verify_exactness(const QuadratureRule& rule, double tol) {
  return monomial_error(rule, rule.exactness) <= tol;
}

QuadratureRule dmm_rule(int p, int branch) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  const Real s = branch;
  QuadratureRule rule;
  rule.label = std::string("DMM") + std::to_string(p) + (branch > 0 ? "+" : "-");
  rule.exactness = 0;
  rule.stencil_degree = p;
  switch (p) {
    case 1:
      rule.nodes = {0.5L + s * std::sqrt(6.0L) / 6};
      rule.weights = {1.0L};
      break;
    case 2:
      rule.nodes = {0.0L, 0.5L + s * std::sqrt(15.0L) / 30};
      rule.weights = {2.0L / 7, 5.0L / 7};
      break;
    case 3:
      rule.nodes = {0.0L, 0.5L + s * std::sqrt(14.0L) / 14};
      rule.weights = {-17.0L / 375, 392.0L / 375};
      break;
    default:
      throw std::invalid_argument("DMM quadrature rules exist for p = 1, 2, 3 only");
  }
  return rule;
}

QuadratureRule BlendedRule::combined() const {
  QuadratureRule r;
  r.label = "blend(" + rule1.label + "," + rule2.label + ")";
  r.exactness = std::min(rule1.exactness, rule2.exactness);
  r.stencil_degree = rule1.stencil_degree == rule2.stencil_degree ? rule1.stencil_degree : 0;
  r.nodes = rule1.nodes;
  r.nodes.insert(r.nodes.end(), rule2.nodes.begin(), rule2.nodes.end());
  for (Real w : rule1.weights) r.weights.push_back(Real(tau) * w);
  for (Real w : rule2.weights) r.weights.push_back((1 - Real(tau)) * w);
  return r;
}

double BlendedRule::apply(const std::function<double(double)>& f) const {
  return tau * rule1.apply(f) + (1.0 - tau) * rule2.apply(f);
}

BlendedRule blend(const QuadratureRule& rule1, const QuadratureRule& rule2, double tau) {
  return BlendedRule{rule1, rule2, tau};
}

std::vector<long double> quadrature_mass_row(int p, const QuadratureRule& rule) {
  return gram_row<false>(p, rule);
}

RealStencil quadrature_mass_stencil(int p, const QuadratureRule& rule) {
  return rounded(p, StencilKind::mass, gram_row<false>(p, rule));
}

RealStencil quadrature_stiffness_stencil(int p, const QuadratureRule& rule) {
  return rounded(p, StencilKind::stiffness, gram_row<true>(p, rule));
}

double optimal_tau(int p, const RealStencil& b1, const RealStencil& b2) {
  return tau_from_targets(blend_target(p, b1.values), blend_target(p, b2.values));
}

double optimal_tau(int p, const Stencil& b_exact, const RealStencil& b_q) {
  const Real num = blend_target(p, b_q.values);
  Real denom = 0;
  for (int k = 1; k <= p; ++k) {
    denom += to_real(power_over_factorial(k, 2 * p)) * (Real(b_q.at(k)) - to_real(b_exact.at(k)));
  }
  if (std::abs(denom) < 1e-14L) {
    throw DegenerateBlendError("quadrature mass equals the exact mass to order 2p");
  }
  return static_cast<double>(num / denom);
}

BlendPair parse_blend_pair(const std::string& label) {
  if (label == "gg") return BlendPair::gg;
  if (label == "gl") return BlendPair::gl;
  if (label == "gr") return BlendPair::gr;
  if (label == "pl") return BlendPair::pl;
  if (label == "pr") return BlendPair::pr;
  if (label == "lr") return BlendPair::lr;
  throw std::invalid_argument("unknown blend pair '" + label + "'");
}

std::string to_string(BlendPair pair) {
  switch (pair) {
    case BlendPair::gg: return "gg";
    case BlendPair::gl: return "gl";
    case BlendPair::gr: return "gr";
    case BlendPair::pl: return "pl";
    case BlendPair::pr: return "pr";
    case BlendPair::lr: return "lr";
  }
  return "?";
}

std::pair<QuadratureRule, QuadratureRule> pair_rules(int p, BlendPair pair) {
  if (p < 1) throw std::invalid_argument("degree must be at least 1");
  switch (pair) {
    case BlendPair::gg: return {gauss_legendre(p + 1), gauss_legendre(p)};
    case BlendPair::gl: return {gauss_legendre(p + 1), gauss_lobatto(p + 1)};
    case BlendPair::gr: return {gauss_legendre(p + 1), gauss_radau(p)};
    case BlendPair::pl: return {gauss_legendre(p), gauss_lobatto(p + 1)};
    case BlendPair::pr: return {gauss_legendre(p), gauss_radau(p)};
    case BlendPair::lr: return {gauss_lobatto(p + 1), gauss_radau(p)};
  }
  throw std::invalid_argument("unknown blend pair");
}

double pair_tau(int p, BlendPair pair) {
  const auto [q1, q2] = pair_rules(p, pair);
  return tau_from_targets(blend_target(p, gram_row<false>(p, q1)),
                          blend_target(p, gram_row<false>(p, q2)));
}

BlendedRule optimal_blend(int p, BlendPair pair) {
  const auto [q1, q2] = pair_rules(p, pair);
  return blend(q1, q2, pair_tau(p, pair));
}

TripleBlendReport triple_blend_check(int p, const QuadratureRule& q1, const QuadratureRule& q2,
                                     const QuadratureRule& q3) {
  const RealStencil b[3] = {quadrature_mass_stencil(p, q1), quadrature_mass_stencil(p, q2),
                            quadrature_mass_stencil(p, q3)};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      double diff = 0;
      for (int k = 0; k <= p; ++k) diff = std::max(diff, std::abs(b[i].at(k) - b[j].at(k)));
      if (diff < 1e-14) {
        throw std::invalid_argument("triple blend needs pairwise distinct mass stencils");
      }
    }
  }

  // Per-rule dispersion coefficients at orders 2p and 2p+2; the 2p+2 one
  // carries the coupling to the rule's own order-2p term.
  const Stencil a = stiffness_stencil(p);
  const double a_lo = to_double(half_moment(a, 2 * p + 2));
  const double a_hi = to_double(half_moment(a, 2 * p + 4));
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  double t_lo[3], t_hi[3];
  for (int i = 0; i < 3; ++i) {
    t_lo[i] = -2.0 * sign * (a_lo + half_moment(b[i], 2 * p));
    t_hi[i] = 2.0 * sign * (a_hi + half_moment(b[i], 2 * p + 2)) +
              2.0 * t_lo[i] * half_moment(b[i], 2);
  }

  TripleBlendReport report;
  report.p = p;
  report.labels = {q1.label, q2.label, q3.label};
  const double* t[2] = {t_lo, t_hi};
  double raw[2][3];
  for (int r = 0; r < 2; ++r) {
    raw[r][0] = t[r][0] - t[r][2];
    raw[r][1] = t[r][1] - t[r][2];
    raw[r][2] = -t[r][2];
    for (int c = 0; c < 3; ++c) report.row[r][c] = raw[r][c] / raw[r][0];
  }

  const double (&m)[2][3] = report.row;
  report.determinant = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double scale = std::hypot(m[0][0], m[0][1]) * std::hypot(m[1][0], m[1][1]);
  if (std::abs(report.determinant) > 1e-10 * scale) {
    report.residual = 0.0;
    report.consistent = true;
    return report;
  }
  // Parallel rows: the least-squares solution sits on the averaged line and
  // leaves half the right-hand side gap on each equation (after scaling both
  // rows to the same normal vector).
  const double n0 = std::hypot(m[0][0], m[0][1]);
  const double n1 = std::hypot(m[1][0], m[1][1]);
  const double s0 = m[0][2] / n0;
  const double s1 = (m[1][0] * m[0][0] + m[1][1] * m[0][1] >= 0 ? 1.0 : -1.0) * m[1][2] / n1;
  report.residual = std::abs(s0 - s1) / std::sqrt(2.0);
  report.consistent = report.residual <= 1e-10 * std::max({1.0, std::abs(s0), std::abs(s1)});
  return report;
}

}  // namespace isodmm
