#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "isodmm/assembly.hpp"
#include "isodmm/dmm.hpp"

using namespace isodmm;

namespace {

// Dirichlet index r belongs to basis function j = r + 1. Rows with
// p <= j and j + p <= N - 1 only meet functions with uniform knots.
bool interior(int p, int N, int r) { return r + 1 >= p && r + 1 + p <= N - 1; }

// Full tensor-product quadrature over the elements, Dirichlet dofs dropped.
void element_loop_2d(const BSplineSpace& s, Eigen::MatrixXd& K, Eigen::MatrixXd& M) {
  const int p = s.degree(), N = s.elements(), n = s.dirichlet_dimension();
  const auto g = gauss_legendre(p + 1);
  K = Eigen::MatrixXd::Zero(n * n, n * n);
  M = Eigen::MatrixXd::Zero(n * n, n * n);
  const double h = s.h();
  for (int ex = 0; ex < N; ++ex) {
    for (int ey = 0; ey < N; ++ey) {
      for (std::size_t qx = 0; qx < g.size(); ++qx) {
        for (std::size_t qy = 0; qy < g.size(); ++qy) {
          const auto bx = element_basis(s, ex, static_cast<double>(g.nodes[qx]));
          const auto by = element_basis(s, ey, static_cast<double>(g.nodes[qy]));
          const double w = static_cast<double>(g.weights[qx] * g.weights[qy]) * h * h;
          for (int a = 0; a <= p; ++a) {
            for (int b = 0; b <= p; ++b) {
              const int ia = bx.first + a - 1, ib = by.first + b - 1;
              if (ia < 0 || ia >= n || ib < 0 || ib >= n) continue;
              for (int c = 0; c <= p; ++c) {
                for (int d = 0; d <= p; ++d) {
                  const int ic = bx.first + c - 1, id = by.first + d - 1;
                  if (ic < 0 || ic >= n || id < 0 || id >= n) continue;
                  const double v1 = bx.values[a] * by.values[b];
                  const double v2 = bx.values[c] * by.values[d];
                  const double grad = bx.derivatives[a] * by.values[b] * bx.derivatives[c] * by.values[d] +
                                      bx.values[a] * by.derivatives[b] * bx.values[c] * by.derivatives[d];
                  K(ia * n + ib, ic * n + id) += w * grad;
                  M(ia * n + ib, ic * n + id) += w * v1 * v2;
                }
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("band matrix storage") {
  SymBandMatrix a(4, 1);
  a.add(0, 1, 2.0L);
  a.add(1, 0, 1.0L);
  a.set(3, 3, 5.0L);
  CHECK(a(1, 0) == 3.0);
  CHECK(a(0, 2) == 0.0);
  CHECK_THROWS_AS(a.add(0, 3, 1.0L), std::out_of_range);
  const auto y = a.multiply({1, 1, 1, 1});
  CHECK(y[0] == 3.0);
  CHECK(y[3] == 5.0);
  const Eigen::MatrixXd d = a.dense();
  CHECK(d(0, 1) == d(1, 0));
  Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
  CHECK(static_cast<double>(a.bilinear(x, x)) == doctest::Approx(d.sum()));

  std::ostringstream os;
  a.write_matrix_market(os);
  CHECK(os.str() == "%%MatrixMarket matrix coordinate real symmetric\n4 4 2\n2 1 3\n4 4 5\n");
}

TEST_CASE("1D matrices carry the stencils in interior rows") {
  for (int p = 1; p <= 4; ++p) {
    const int N = 4 * p + 4;
    const BSplineSpace s(p, N);
    const auto pair = assemble_1d(s, gauss_legendre(p + 1), gauss_legendre(p + 1));
    CHECK(pair.K.size() == s.dirichlet_dimension());
    const Stencil a = stiffness_stencil(p), b = mass_stencil(p);
    for (int r = 0; r < pair.K.size(); ++r) {
      if (!interior(p, N, r)) continue;
      for (int k = 0; k <= p; ++k) {
        CHECK(pair.K(r, r + k) == doctest::Approx(to_double(a.values[k]) * N).epsilon(1e-12));
        CHECK(pair.M(r, r + k) == doctest::Approx(to_double(b.values[k]) / N).epsilon(1e-12));
      }
      if (r + 1 == p) continue;  // its left neighbour is the removed function 0
      // K annihilates constants away from the boundary.
      double row = 0.0;
      for (int c = 0; c < pair.K.size(); ++c) row += pair.K(r, c);
      CHECK(std::abs(row) < 1e-10 * N);
    }
  }
}

TEST_CASE("mass sums to the measure of the domain") {
  // Adding back the two boundary functions, sum_ij M_ij = |(0,1)|.
  for (int p = 1; p <= 4; ++p) {
    const BSplineSpace s(p, 9);
    const auto pair = assemble_1d(s, gauss_legendre(p + 1), gauss_legendre(p + 1));
    const double sum = pair.M.dense().sum();
    CHECK(sum < 1.0);
    CHECK(sum > 1.0 - 2.0 / 9.0);
  }
}

TEST_CASE("dispersion-minimized assembly") {
  for (int p = 1; p <= 4; ++p) {
    const int N = 16;
    const auto pair = assemble_1d_dmm(BSplineSpace(p, N));
    const Stencil o = dmm_stencil(p);
    for (int r = 0; r < pair.M.size(); ++r) {
      if (!interior(p, N, r)) continue;
      for (int k = 0; k <= p; ++k) {
        CHECK(pair.M(r, r + k) == doctest::Approx(to_double(o.values[k]) / N).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("two-node rule path agrees in the interior") {
  for (int p = 1; p <= 3; ++p) {
    const int N = 12;
    const BSplineSpace s(p, N);
    const auto blended = assemble_1d_dmm(s);
    for (int branch : {1, -1}) {
      const auto rule = assemble_1d_dmm_rule(s, branch);
      bool boundary_differs = false;
      for (int r = 0; r < rule.M.size(); ++r) {
        for (int c = r; c <= std::min(r + p, rule.M.size() - 1); ++c) {
          const double d = std::abs(rule.M(r, c) - blended.M(r, c));
          if (interior(p, N, r) && interior(p, N, c)) {
            CHECK(d < 1e-14);
          } else if (d > 1e-12) {
            boundary_differs = true;
          }
          CHECK(std::abs(rule.K(r, c) - blended.K(r, c)) < 1e-12 * N);
        }
      }
      if (p >= 2) CHECK(boundary_differs);
    }
  }
  CHECK_THROWS(assemble_1d_dmm_rule(BSplineSpace(4, 8)));
}

TEST_CASE("2D Kronecker assembly matches an element loop") {
  for (int p = 1; p <= 3; ++p) {
    const BSplineSpace s(p, 4);
    const auto pair = assemble_2d(s, gauss_legendre(p + 1), gauss_legendre(p + 1));
    Eigen::MatrixXd K, M;
    element_loop_2d(s, K, M);
    CHECK((pair.K.dense() - K).cwiseAbs().maxCoeff() < 1e-12 * K.cwiseAbs().maxCoeff());
    CHECK((pair.M.dense() - M).cwiseAbs().maxCoeff() < 1e-12 * M.cwiseAbs().maxCoeff());
    CHECK(pair.dimension == 2);
  }
}

TEST_CASE("2D size cap") {
  const BSplineSpace s(2, 64);
  CHECK_THROWS_AS(assemble_2d(s, gauss_legendre(3), gauss_legendre(3)), DimensionCapError);
  CHECK_NOTHROW(assemble_2d(s, gauss_legendre(3), gauss_legendre(3), 5000));
}
