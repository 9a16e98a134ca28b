#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "isodmm/dispersion.hpp"
#include "isodmm/dmm.hpp"
#include "isodmm/eigensolve.hpp"
#include "isodmm/quadrature.hpp"

using namespace isodmm;

TEST_CASE("linear elements in closed form") {
  const RealStencil a = to_real(stiffness_stencil(1)), b = to_real(mass_stencil(1));
  for (double lam : {0.01, 0.3, 1.0, 2.5, M_PI}) {
    const double closed = 6.0 * (1.0 - std::cos(lam)) / (2.0 + std::cos(lam));
    CHECK(rayleigh(1, a, b, lam) == doctest::Approx(closed).epsilon(1e-13));
  }
  CHECK(rayleigh(1, a, b, 1e-4) / 1e-8 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(rayleigh(1, a, b, 0.0), std::domain_error);
  CHECK_THROWS_AS(rayleigh(1, a, b, 4.0), std::domain_error);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, M_PI, 50);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == M_PI);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("error sign follows the leading coefficient") {
  const auto grid = log_grid(1e-2, 1e-1, 11);
  for (int p = 1; p <= 4; ++p) {
    const Stencil a = stiffness_stencil(p);
    const double c = to_double(leading_coefficient(p, a, mass_stencil(p), 2 * p));
    for (const auto& s : sample_curve(p, a, mass_stencil(p), grid).samples) {
      CHECK((s.error > 0) == (c > 0));
    }
    const double cd = to_double(leading_coefficient(p, a, dmm_stencil(p), 2 * p + 2));
    for (const auto& s : sample_curve(p, a, dmm_stencil(p), grid).samples) {
      CHECK((s.error > 0) == (cd > 0));
    }
  }
}

TEST_CASE("fitted orders") {
  const auto grid = log_grid(1e-2, 1e-1, 41);
  for (int p = 1; p <= 3; ++p) {
    const Stencil a = stiffness_stencil(p);
    CHECK(fit_order(sample_curve(p, a, mass_stencil(p), grid)) == doctest::Approx(2 * p).epsilon(0.1 / (2 * p)));
    CHECK(fit_order(sample_curve(p, a, dmm_stencil(p), grid)) ==
          doctest::Approx(2 * p + 2).epsilon(0.1 / (2 * p + 2)));
  }
  // [1, 0] row from Lobatto at p = 1
  const auto lumped = quadrature_mass_stencil(1, gauss_lobatto(2));
  CHECK(fit_order(sample_curve(1, stiffness_stencil(1), lumped, grid)) ==
        doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("fit needs samples above the noise floor") {
  DispersionCurve c;
  c.epsilon = 1e-16;
  c.samples = {{0.05, 0.0025, 0.0}, {0.06, 0.0036, 0.0}};
  CHECK_THROWS(fit_order(c));
}

TEST_CASE("leading coefficients match the limit") {
  const auto exact1 = coefficient_check(1, stiffness_stencil(1), mass_stencil(1));
  REQUIRE(exact1.size() == 2);
  CHECK(exact1[0].order == 2);
  CHECK(exact1[0].predicted == doctest::Approx(1.0 / 12));
  CHECK(exact1[0].passed);
  const auto dmm1 = coefficient_check(1, stiffness_stencil(1), dmm_stencil(1));
  CHECK(dmm1[0].passed);
  CHECK(dmm1[1].predicted == doctest::Approx(-1.0 / 240));
  CHECK(dmm1[1].passed);
  for (int p = 2; p <= 4; ++p) {
    const Stencil a = stiffness_stencil(p);
    CHECK(coefficient_check(p, a, mass_stencil(p))[0].passed);
    const auto d = coefficient_check(p, a, dmm_stencil(p));
    CHECK(d[0].passed);
    CHECK(d[1].passed);
    // Double-precision rows cannot resolve the order-8 term at p = 4.
    if (p <= 3) {
      CHECK(coefficient_check(p, a, quadrature_mass_stencil(p, gauss_radau(p)))[0].passed);
      CHECK(coefficient_check(p, a, quadrature_mass_stencil(p, gauss_lobatto(p + 1)))[0].passed);
    }
  }
}

TEST_CASE("eigenvalue errors follow the dispersion relation") {
  const int N = 64;
  for (int p = 1; p <= 3; ++p) {
    const BSplineSpace s(p, N);
    for (bool minimized : {false, true}) {
      const Stencil a = stiffness_stencil(p);
      const Stencil b = minimized ? dmm_stencil(p) : mass_stencil(p);
      const auto pair = minimized ? assemble_1d_dmm(s)
                                  : assemble_1d(s, gauss_legendre(p + 1), gauss_legendre(p + 1));
      const auto ev = generalized_eig(pair, false).eigenvalues;
      const int order = minimized ? 2 * p + 2 : 2 * p;
      const double c = to_double(leading_coefficient(p, a, b, order));
      std::vector<double> grid;
      for (int j = 1; j <= N / 4; ++j) grid.push_back(j * M_PI / N);
      const auto curve = sample_curve(p, a, b, grid);
      for (int j = 1; j <= N / 4; ++j) {
        const double lam = j * M_PI / N;
        const double exact = (j * M_PI) * (j * M_PI);
        const double err = (ev[j - 1] - exact) / exact;
        // Whole dispersion relation, all modes up to N/4. Errors within a
        // few ulps of the eigenvalue carry no ratio.
        const double full = curve.samples[j - 1].error / (lam * lam);
        if (std::abs(err) > 1e-14) {
          CHECK_MESSAGE(std::abs(err / full - 1.0) < 0.1, "p=" << p << " j=" << j);
        }
        // Leading term only; its remainder grows with jh, so stop at N/8, and
        // skip errors too close to round-off to carry a ratio.
        if (j <= N / 8 && std::abs(err) > 1e-11) {
          const double leading = c * std::pow(lam, order);
          CHECK_MESSAGE(std::abs(err / leading - 1.0) < 0.1, "p=" << p << " j=" << j);
        }
      }
    }
  }
}
