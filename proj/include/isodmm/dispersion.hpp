#pragma once

#include <string>
#include <vector>

#include "isodmm/stencils.hpp"

namespace isodmm {

/// omega_h^2 h^2 = (A0 + 2 sum A_k cos k L) / (B0 + 2 sum B_k cos k L).
double rayleigh(int p, const RealStencil& a, const RealStencil& b, double lambda);

struct DispersionSample {
  double lambda = 0;
  double ratio = 0;
  double error = 0;  ///< ratio - lambda^2
};

/// Samples are evaluated with 50 significant digits. `epsilon` is the
/// relative precision of the stencil values that went in: the evaluation
/// cannot resolve errors below about epsilon * lambda^2.
struct DispersionCurve {
  int p = 0;
  std::string label;
  double epsilon = 0;
  std::vector<DispersionSample> samples;
};

std::vector<double> log_grid(double lo, double hi, int count);

DispersionCurve sample_curve(int p, const Stencil& a, const Stencil& b,
                             const std::vector<double>& lambdas, std::string label = "");
DispersionCurve sample_curve(int p, const Stencil& a, const RealStencil& b,
                             const std::vector<double>& lambdas, std::string label = "");

/// Least-squares slope of log|error / lambda^2| against log lambda over the
/// samples inside [lo, hi] and above the noise floor; this is the order in h
/// of the relative frequency error at fixed wavenumber.
double fit_order(const DispersionCurve& curve, double lo = 1e-2, double hi = 1e-1);

struct CoefficientCheck {
  int order = 0;  ///< power of h; the error scales as lambda^{order+2}
  double predicted = 0;
  double measured = 0;
  bool passed = false;
};

/// Extrapolates error / lambda^{order+2} to lambda -> 0 (values at 0.2, 0.1,
/// 0.05 combined by Richardson in lambda^2) and compares it with the
/// leading-coefficient formula: within 1%, or below 1e-10 when the formula
/// gives zero. Both orders 2p and 2p+2 are reported; the 2p+2 entry is only
/// meaningful when the 2p coefficient vanishes. A double-precision mass row
/// leaves about 1e-16 lambda^2 of noise, which swamps the order-2p term at
/// lambda = 0.05 from p = 4 on.
std::vector<CoefficientCheck> coefficient_check(int p, const Stencil& a, const Stencil& b);
std::vector<CoefficientCheck> coefficient_check(int p, const Stencil& a, const RealStencil& b);

}  // namespace isodmm
