#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "isodmm/quadrature.hpp"
#include "isodmm/splines.hpp"

namespace isodmm {

/// Symmetric band matrix; only the upper band is stored. Entries are kept in
/// long double so eigenvalues can be polished past double round-off.
class SymBandMatrix {
 public:
  SymBandMatrix() = default;
  SymBandMatrix(int n, int bandwidth);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  double operator()(int i, int j) const { return static_cast<double>(entry(i, j)); }
  long double entry(int i, int j) const;
  void add(int i, int j, long double v);
  void set(int i, int j, long double v);

  Eigen::MatrixXd dense() const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  /// x^T A y accumulated in long double.
  long double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Coordinate format, lower triangle, 1-based ("symmetric" header).
  void write_matrix_market(std::ostream& os) const;

 private:
  long double& slot(int i, int j);
  int n_ = 0;
  int bw_ = 0;
  std::vector<long double> band_;
};

/// Dirichlet-reduced stiffness/mass pair. For dimension 2, `space` is the
/// 1D factor space.
struct MatrixPair {
  SymBandMatrix K;
  SymBandMatrix M;
  BSplineSpace space{1, 2};
  int dimension = 1;
  std::string stiffness_label;
  std::string mass_label;
};

struct DimensionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MatrixPair assemble_1d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const QuadratureRule& mass_rule);
MatrixPair assemble_1d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const BlendedRule& mass_rule);

/// G_{p+1} stiffness; mass from the optimal G_{p+1}/L_{p+1} blend, applied
/// elementwise. Interior rows carry the DMM stencil.
MatrixPair assemble_1d_dmm(const BSplineSpace& space);

/// G_{p+1} stiffness; mass from the two-node DMM rule (p <= 3) applied
/// elementwise. Interior rows agree with assemble_1d_dmm; the rows touched by
/// the boundary do not.
MatrixPair assemble_1d_dmm_rule(const BSplineSpace& space, int branch = 1);

/// K2 = K (x) M + M (x) K, M2 = M (x) M from a 1D pair.
MatrixPair assemble_2d(const MatrixPair& one_d, std::size_t max_dofs = 1600);
MatrixPair assemble_2d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const QuadratureRule& mass_rule, std::size_t max_dofs = 1600);

}  // namespace isodmm
