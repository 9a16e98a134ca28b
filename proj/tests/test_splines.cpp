#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "isodmm/splines.hpp"
#include "oracles.hpp"

using namespace isodmm;

TEST_CASE("rational helpers") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(factorial(10) == 3628800);
  CHECK(power_over_factorial(2, 4) == make_rational(2, 3));
  Rational r;
  REQUIRE(recover_fraction(22.0 / 7, 1000, 1e-14, r));
  CHECK(r == make_rational(22, 7));
  REQUIRE(recover_fraction(-145.0 / 2, 1000, 1e-14, r));
  CHECK(r == make_rational(-145, 2));
  CHECK_FALSE(recover_fraction(M_PI, 100, 1e-14, r));
  CHECK(format_scientific(3.41301e-5) == "3.41301e-05");
}

TEST_CASE("space and knot vector") {
  CHECK_THROWS_AS(BSplineSpace(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(BSplineSpace(2, 1), std::invalid_argument);
  const BSplineSpace s(3, 5);
  CHECK(s.dimension() == 8);
  CHECK(s.dirichlet_dimension() == 6);
  const auto k = knot_vector(3, 5);
  REQUIRE(k.size() == 12);
  CHECK(k[0] == 0.0);
  CHECK(k[3] == 0.0);
  CHECK(k[4] == doctest::Approx(0.2));
  CHECK(k[11] == 1.0);
  const auto ke = knot_vector_exact(2, 3);
  CHECK(ke[3] == make_rational(1, 3));
}

TEST_CASE("partition of unity and nonnegativity") {
  for (int p = 1; p <= 6; ++p) {
    const BSplineSpace s(p, 7);
    for (int i = 0; i <= 70; ++i) {
      const double x = i / 70.0;
      double sum = 0.0, dsum = 0.0;
      for (int j = 0; j < s.dimension(); ++j) {
        const double v = eval_basis(s, j, x);
        CHECK(v >= -1e-15);
        sum += v;
        dsum += eval_basis_derivative(s, j, x);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(dsum) < 1e-11);
    }
  }
}

TEST_CASE("exact partition of unity in rational arithmetic") {
  const BSplineSpace s(4, 6);
  for (int e = 0; e < 6; ++e) {
    const auto local = element_basis(s, e, make_rational(2, 7));
    Rational sum = 0;
    for (const auto& v : local.values) sum += v;
    CHECK(sum == 1);
  }
}

TEST_CASE("derivative against central differences") {
  const BSplineSpace s(3, 6);
  const double h = 1e-6;
  for (int j = 0; j < s.dimension(); ++j) {
    for (double x : {0.11, 0.37, 0.52, 0.93}) {
      const double fd = (eval_basis(s, j, x + h) - eval_basis(s, j, x - h)) / (2 * h);
      CHECK(eval_basis_derivative(s, j, x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("end points and range") {
  const BSplineSpace s(2, 4);
  CHECK(eval_basis(s, 0, 0.0) == 1.0);
  CHECK(eval_basis(s, s.dimension() - 1, 1.0) == 1.0);
  CHECK(eval_basis(s, 1, 1.0) == 0.0);
  CHECK_THROWS_AS(eval_basis(s, 0, 1.5), std::out_of_range);
  CHECK_THROWS_AS(eval_basis(s, 6, 0.5), std::out_of_range);
}

TEST_CASE("interior basis is a shifted cardinal spline") {
  const int p = 3, N = 10;
  const BSplineSpace s(p, N);
  const int j = 5;  // support [j-p, j+1] in units of h
  for (int i = 1; i < 40; ++i) {
    const Rational t = make_rational(i, 10);
    const Rational x = (t + Rational(j - p)) / N;
    CHECK(eval_basis(s, j, x) == oracle::cardinal(p, t));
  }
}

TEST_CASE("cardinal values") {
  CHECK(cardinal_value(3, Rational(2)) == make_rational(2, 3));
  CHECK(cardinal_value(3, Rational(1)) == make_rational(1, 6));
  CHECK(cardinal_value(0, Rational(0)) == 1);
  CHECK(cardinal_value(2, Rational(3)) == 0);
  for (int p = 1; p <= 7; ++p) {
    for (int i = -3; i <= 10 * (p + 2); ++i) {
      const Rational t = make_rational(i, 10);
      const Rational v = cardinal_value(p, t);
      CHECK(v == oracle::cardinal(p, t));
      CHECK(cardinal_value(p, to_double(t)) == doctest::Approx(to_double(v)).epsilon(1e-13));
    }
  }
  CHECK(cardinal_derivative(2, 1.5) == doctest::Approx(0.0));
  CHECK(cardinal_derivative(2, 0.5) == doctest::Approx(0.5));
}
