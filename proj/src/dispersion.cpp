#include "isodmm/dispersion.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "isodmm/dmm.hpp"

namespace isodmm {

namespace {

using High = boost::multiprecision::cpp_bin_float_50;

High to_high(const Rational& r) {
  return High(r.get_num().get_str()) / High(r.get_den().get_str());
}

std::vector<High> to_high(const Stencil& s) {
  std::vector<High> out;
  for (const auto& v : s.values) out.push_back(to_high(v));
  return out;
}

std::vector<High> to_high(const RealStencil& s) {
  std::vector<High> out;
  for (double v : s.values) out.push_back(High(v));
  return out;
}

High symbol(const std::vector<High>& s, const High& lambda) {
  High sum = s[0];
  for (std::size_t k = 1; k < s.size(); ++k) sum += 2 * s[k] * cos(High(k) * lambda);
  return sum;
}

High high_error(const std::vector<High>& a, const std::vector<High>& b, double lambda) {
  const High l(lambda);
  const High den = symbol(b, l);
  if (abs(den) < High(1e-14)) throw std::domain_error("mass symbol vanishes (stopping band)");
  return symbol(a, l) / den - l * l;
}

DispersionCurve sample(int p, const std::vector<High>& a, const std::vector<High>& b,
                       const std::vector<double>& lambdas, std::string label, double eps) {
  DispersionCurve curve{p, std::move(label), eps, {}};
  for (double l : lambdas) {
    if (!(l > 0) || l > std::numbers::pi) throw std::domain_error("lambda must lie in (0, pi]");
    const High err = high_error(a, b, l);
    curve.samples.push_back({l, static_cast<double>(err + High(l) * High(l)),
                             static_cast<double>(err)});
  }
  return curve;
}

double extrapolated(const std::vector<High>& a, const std::vector<High>& b, int power) {
  High r[3];
  const double ls[3] = {0.2, 0.1, 0.05};
  for (int i = 0; i < 3; ++i) r[i] = high_error(a, b, ls[i]) / pow(High(ls[i]), power);
  const High r1 = (4 * r[1] - r[0]) / 3;
  const High r2 = (4 * r[2] - r[1]) / 3;
  return static_cast<double>((16 * r2 - r1) / 15);
}

template <class B>
std::vector<CoefficientCheck> check(int p, const Stencil& a, const B& b) {
  const auto ha = to_high(a);
  const auto hb = to_high(b);
  std::vector<CoefficientCheck> out;
  for (int order : {2 * p, 2 * p + 2}) {
    CoefficientCheck c;
    c.order = order;
    if constexpr (std::is_same_v<B, Stencil>) {
      c.predicted = to_double(leading_coefficient(p, a, b, order));
    } else {
      c.predicted = leading_coefficient(p, to_real(a), b, order);
    }
    c.measured = extrapolated(ha, hb, order + 2);
    if (c.predicted == 0.0) {
      c.passed = std::abs(c.measured) < 1e-10;
    } else {
      c.passed = std::abs(c.measured - c.predicted) <= 0.01 * std::abs(c.predicted);
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

double rayleigh(int p, const RealStencil& a, const RealStencil& b, double lambda) {
  if (a.degree != p || b.degree != p) throw std::invalid_argument("stencil degree mismatch");
  if (!(lambda > 0) || lambda > std::numbers::pi) throw std::domain_error("lambda must lie in (0, pi]");
  double num = a.at(0), den = b.at(0);
  for (int k = 1; k <= p; ++k) {
    num += 2 * a.at(k) * std::cos(k * lambda);
    den += 2 * b.at(k) * std::cos(k * lambda);
  }
  if (std::abs(den) < 1e-14) throw std::domain_error("mass symbol vanishes (stopping band)");
  return num / den;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw std::invalid_argument("bad grid");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

DispersionCurve sample_curve(int p, const Stencil& a, const Stencil& b,
                             const std::vector<double>& lambdas, std::string label) {
  return sample(p, to_high(a), to_high(b), lambdas, std::move(label), 1e-48);
}

DispersionCurve sample_curve(int p, const Stencil& a, const RealStencil& b,
                             const std::vector<double>& lambdas, std::string label) {
  return sample(p, to_high(a), to_high(b), lambdas, std::move(label),
                std::numeric_limits<double>::epsilon());
}

double fit_order(const DispersionCurve& curve, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : curve.samples) {
    if (s.lambda < lo || s.lambda > hi) continue;
    const double l2 = s.lambda * s.lambda;
    if (!(std::abs(s.error) > 100 * curve.epsilon * l2)) continue;
    const double x = std::log(s.lambda);
    const double y = std::log(std::abs(s.error) / l2);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 5) throw std::runtime_error("fewer than 5 dispersion samples above the noise floor");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<CoefficientCheck> coefficient_check(int p, const Stencil& a, const Stencil& b) {
  return check(p, a, b);
}

std::vector<CoefficientCheck> coefficient_check(int p, const Stencil& a, const RealStencil& b) {
  return check(p, a, b);
}

}  // namespace isodmm
