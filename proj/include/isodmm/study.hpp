#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isodmm/assembly.hpp"
#include "isodmm/stencils.hpp"

namespace isodmm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mass treatment selected by label:
///   exact (G_{p+1}), G (G_p), L (L_{p+1}), R (R_p), dmm (optimal G/L blend),
///   dmm-rule[:+|:-] (two-node rule, p <= 3), blend:PAIR[:TAU].
/// Stiffness always uses G_{p+1}.
struct MassChoice {
  enum class Kind { exact, gauss, lobatto, radau, dmm, dmm_rule, blend };
  Kind kind = Kind::exact;
  BlendPair pair = BlendPair::gl;
  std::optional<double> tau;
  int branch = 1;
  std::string key;

  std::string display(int p) const;
  /// Throws ConfigError when the choice is not available at degree p.
  void check(int p) const;
  QuadratureRule rule(int p) const;
  MatrixPair assemble(const BSplineSpace& space) const;
  /// Exact interior row when one exists (exact, dmm).
  std::optional<Stencil> exact_row(int p) const;
  RealStencil row(int p) const;
};

MassChoice parse_mass_choice(const std::string& label);

struct StudyConfig {
  std::vector<int> degrees;
  std::vector<int> meshes;
  std::vector<std::string> rules{"exact", "R", "dmm"};
  int dimension = 1;
  std::vector<int> modes{1, 2, 4};
  bool eigenfunctions = true;  ///< 1D only
  std::string solver2d = "tensor";  ///< tensor | kronecker
  std::size_t max_dofs = 1600;
  int threads = 0;  ///< 0: hardware concurrency
  std::string csv_path;
  std::string json_path;

  /// Applies one key=value assignment.
  void set(const std::string& key, const std::string& value);
  /// Reads "key = value" lines; '#' starts a comment.
  static StudyConfig parse(std::istream& in);
  static StudyConfig load(const std::string& path);
  /// Throws ConfigError.
  void validate() const;
};

struct StudyCell {
  int p = 0;
  int N = 0;
  std::string rule;
  std::vector<double> rel_ev_error;
  std::vector<double> ef_energy_error;
  std::string error;  ///< empty on success
};

struct StudyRate {
  int p = 0;
  std::string rule;
  int mode = 0;
  std::optional<double> ev_rate;
  std::optional<double> ef_rate;
};

struct StudyReport {
  StudyConfig config;
  std::vector<StudyCell> cells;
  std::vector<StudyRate> rates;

  void write_csv(std::ostream& os) const;
  std::string to_json() const;
};

/// Least-squares slope of -log|e| against log N (NaN entries skipped);
/// nullopt with fewer than two usable points.
std::optional<double> fitted_rate(const std::vector<int>& meshes, const std::vector<double>& errors);

StudyReport run_study(const StudyConfig& config);

}  // namespace isodmm
