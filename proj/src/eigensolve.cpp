#include "isodmm/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace isodmm {

Spectrum generalized_eig(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, bool vectors) {
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows()) {
    throw std::invalid_argument("K and M must be square and of equal size");
  }
  Spectrum out;
  const Eigen::Index n = K.rows();
  if (n == 0) return out;
  if (Eigen::LLT<Eigen::MatrixXd>(M).info() != Eigen::Success) {
    throw IndefiniteMassError("mass matrix is not positive definite");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(K).info() != Eigen::Success) {
    throw std::runtime_error("stiffness matrix is not positive definite");
  }
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      M, K, vectors ? Eigen::ComputeEigenvectors | Eigen::Ax_lBx : Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");

  // sigma ascending -> lambda descending; walk backwards.
  const Eigen::VectorXd& sigma = solver.eigenvalues();
  out.eigenvalues.resize(n);
  if (vectors) out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = n - 1 - i;
    if (!(sigma(src) > 0)) throw IndefiniteMassError("non-positive generalized eigenvalue");
    out.eigenvalues[i] = 1.0 / sigma(src);
    if (vectors) {
      Eigen::VectorXd v = solver.eigenvectors().col(src);
      v /= std::sqrt(v.dot(M * v));
      out.eigenvectors.col(i) = v;
    }
  }
  return out;
}

Spectrum generalized_eig(const MatrixPair& pair, bool vectors) {
  Spectrum out = generalized_eig(pair.K.dense(), pair.M.dense(), true);
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
    const Eigen::VectorXd v = out.eigenvectors.col(static_cast<Eigen::Index>(i));
    out.eigenvalues[i] = static_cast<double>(pair.K.bilinear(v, v) / pair.M.bilinear(v, v));
  }
  if (!vectors) out.eigenvectors.resize(0, 0);
  return out;
}

std::vector<double> exact_spectrum(int dimension, int count) {
  if (count < 0) throw std::invalid_argument("negative eigenvalue count");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> out;
  if (dimension == 1) {
    for (int j = 1; j <= count; ++j) out.push_back(j * j * pi2);
    return out;
  }
  if (dimension != 2) throw std::invalid_argument("dimension must be 1 or 2");
  // (1,1)..(1,count) already gives `count` values <= 1 + count^2, so no
  // index beyond count can enter the list.
  std::vector<long> sums;
  for (long j = 1; j <= count; ++j) {
    for (long k = 1; k <= count; ++k) sums.push_back(j * j + k * k);
  }
  std::sort(sums.begin(), sums.end());
  for (int i = 0; i < count; ++i) out.push_back(sums[i] * pi2);
  return out;
}

double exact_eigenfunction(int j, double x) {
  return std::sqrt(2.0) * std::sin(j * std::numbers::pi * x);
}

double exact_eigenfunction_derivative(int j, double x) {
  return std::sqrt(2.0) * j * std::numbers::pi * std::cos(j * std::numbers::pi * x);
}

std::vector<double> relative_ev_errors(const std::vector<double>& discrete,
                                       const std::vector<double>& exact) {
  if (discrete.size() != exact.size()) {
    throw std::invalid_argument("eigenvalue lists differ in length");
  }
  std::vector<double> out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) out[i] = (discrete[i] - exact[i]) / exact[i];
  return out;
}

double energy_error(const MatrixPair& pair, const Spectrum& spec, int mode) {
  if (pair.dimension != 1) throw std::invalid_argument("energy error is defined for 1D pairs");
  if (!spec.has_vectors()) throw std::invalid_argument("spectrum has no eigenvectors");
  if (mode < 1 || mode > static_cast<int>(spec.eigenvalues.size())) {
    throw std::out_of_range("mode index out of range");
  }
  const BSplineSpace& space = pair.space;
  const int p = space.degree();
  const int last = space.dimension() - 1;
  const double h = space.h();
  const QuadratureRule rule = gauss_legendre(p + 5);
  const Eigen::VectorXd v = spec.eigenvectors.col(mode - 1);

  double a_cross = 0.0, b_cross = 0.0;
  for (int e = 0; e < space.elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double xi = static_cast<double>(rule.nodes[q]);
      const double w = static_cast<double>(rule.weights[q]) * h;
      const auto local = element_basis<double>(space, e, xi);
      double uh = 0.0, duh = 0.0;
      for (int r = 0; r <= p; ++r) {
        const int g = local.first + r;
        if (g == 0 || g == last) continue;
        uh += v(g - 1) * local.values[r];
        duh += v(g - 1) * local.derivatives[r];
      }
      const double x = (e + xi) * h;
      a_cross += w * exact_eigenfunction_derivative(mode, x) * duh;
      b_cross += w * exact_eigenfunction(mode, x) * uh;
    }
  }
  if (std::abs(b_cross) < 1e-14) {
    throw std::runtime_error("discrete eigenfunction is orthogonal to the exact one");
  }
  if (b_cross < 0) a_cross = -a_cross;
  const double lambda = mode * mode * std::numbers::pi * std::numbers::pi;
  const double discrete = v.dot(pair.K.dense() * v);
  return std::sqrt(std::max(0.0, lambda - 2.0 * a_cross + discrete));
}

Spectrum tensor_spectrum_2d(const Spectrum& spec1d) {
  Spectrum out;
  const auto& ev = spec1d.eigenvalues;
  for (double a : ev) {
    for (double b : ev) out.eigenvalues.push_back(a + b);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double max_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, const Spectrum& spec) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvectors.cols(); ++i) {
    const Eigen::VectorXd v = spec.eigenvectors.col(i);
    const Eigen::VectorXd kv = K * v;
    worst = std::max(worst, (kv - spec.eigenvalues[i] * (M * v)).norm() / kv.norm());
  }
  return worst;
}

void write_csv_header(std::ostream& os) {
  os << "p,N,rule,mode,rel_ev_error,ef_energy_error\n";
}

void ErrorTable::write_csv(std::ostream& os, bool header) const {
  if (header) write_csv_header(os);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    os << p << ',' << N << ',' << rule << ',' << modes[i] << ',' << format_scientific(rel_ev_error[i])
       << ',';
    if (i < ef_energy_error.size()) os << format_scientific(ef_energy_error[i]);
    os << '\n';
  }
}

}  // namespace isodmm
