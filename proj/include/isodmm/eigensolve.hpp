#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "isodmm/assembly.hpp"

namespace isodmm {

struct IndefiniteMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ascending eigenvalues; eigenvectors (if requested) are columns with
/// v^T M v = 1.
struct Spectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;

  bool has_vectors() const { return eigenvectors.cols() > 0; }
};

/// Solves K v = lambda M v. M is tested with a Cholesky factorization first;
/// the solve itself runs on M v = sigma K v (K is the better conditioned
/// factor) and reports lambda = 1/sigma.
Spectrum generalized_eig(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M,
                         bool vectors = true);
/// As above on the densified pair, then each eigenvalue is replaced by the
/// Rayleigh quotient of its eigenvector evaluated with the long-double band
/// entries.
Spectrum generalized_eig(const MatrixPair& pair, bool vectors = true);

/// First `count` Dirichlet Laplace eigenvalues on the unit interval/square,
/// ascending with multiplicity.
std::vector<double> exact_spectrum(int dimension, int count);

/// sqrt(2) sin(j pi x) and its derivative.
double exact_eigenfunction(int j, double x);
double exact_eigenfunction_derivative(int j, double x);

/// (discrete_j - exact_j) / exact_j for j = 1..exact.size().
std::vector<double> relative_ev_errors(const std::vector<double>& discrete,
                                       const std::vector<double>& exact);

/// Energy-norm distance between sqrt(2) sin(j pi x) and the discrete
/// eigenfunction j (1-based) of a 1D pair, with the sign chosen so that the
/// L2 product is positive.
double energy_error(const MatrixPair& pair, const Spectrum& spec, int mode);

/// All pairwise sums of a 1D spectrum, ascending.
Spectrum tensor_spectrum_2d(const Spectrum& spec1d);

/// Largest |K v - lambda M v| / |K v| over the computed pairs.
double max_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, const Spectrum& spec);

struct ErrorTable {
  int p = 0;
  int N = 0;
  int dimension = 1;
  std::string rule;
  std::vector<int> modes;
  std::vector<double> rel_ev_error;
  std::vector<double> ef_energy_error;  ///< empty when not computed

  void write_csv(std::ostream& os, bool header) const;
};

void write_csv_header(std::ostream& os);

}  // namespace isodmm
