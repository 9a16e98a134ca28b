#include "isodmm/assembly.hpp"

#include <cstdio>
#include <ostream>

namespace isodmm {

SymBandMatrix::SymBandMatrix(int n, int bandwidth)
    : n_(n), bw_(bandwidth), band_(static_cast<std::size_t>(n) * (bandwidth + 1), 0.0L) {
  if (n < 0 || bandwidth < 0) throw std::invalid_argument("negative matrix dimensions");
}

long double& SymBandMatrix::slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_ || j - i > bw_) throw std::out_of_range("entry outside the band");
  return band_[static_cast<std::size_t>(i) * (bw_ + 1) + (j - i)];
}

long double SymBandMatrix::entry(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw std::out_of_range("matrix index out of range");
  if (j - i > bw_) return 0.0L;
  return band_[static_cast<std::size_t>(i) * (bw_ + 1) + (j - i)];
}

void SymBandMatrix::add(int i, int j, long double v) { slot(i, j) += v; }
void SymBandMatrix::set(int i, int j, long double v) { slot(i, j) = v; }

Eigen::MatrixXd SymBandMatrix::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < std::min(n_, i + bw_ + 1); ++j) {
      d(i, j) = d(j, i) = (*this)(i, j);
    }
  }
  return d;
}

std::vector<double> SymBandMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("vector length mismatch");
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    long double s = 0.0L;
    for (int j = std::max(0, i - bw_); j < std::min(n_, i + bw_ + 1); ++j) {
      s += entry(i, j) * x[j];
    }
    y[i] = static_cast<double>(s);
  }
  return y;
}

long double SymBandMatrix::bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("vector length mismatch");
  long double s = 0.0L;
  for (int i = 0; i < n_; ++i) {
    const long double* row = &band_[static_cast<std::size_t>(i) * (bw_ + 1)];
    s += row[0] * x(i) * y(i);
    for (int d = 1; d <= bw_ && i + d < n_; ++d) {
      s += row[d] * (static_cast<long double>(x(i)) * y(i + d) +
                     static_cast<long double>(x(i + d)) * y(i));
    }
  }
  return s;
}

void SymBandMatrix::write_matrix_market(std::ostream& os) const {
  std::size_t nnz = 0;
  for (int j = 0; j < n_; ++j) {
    for (int i = j; i < std::min(n_, j + bw_ + 1); ++i) nnz += (*this)(i, j) != 0.0;
  }
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << n_ << ' ' << n_ << ' ' << nnz << '\n';
  char buf[96];
  for (int j = 0; j < n_; ++j) {
    for (int i = j; i < std::min(n_, j + bw_ + 1); ++i) {
      const double v = (*this)(i, j);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i + 1, j + 1, v);
      os << buf;
    }
  }
}

namespace {

// Adds w * h * f(i) * f(j) over every element and node; basis 0 and n-1 are
// dropped (homogeneous Dirichlet).
void accumulate(const BSplineSpace& space, const QuadratureRule& rule, bool derivative,
                SymBandMatrix& out) {
  const int p = space.degree();
  const int last = space.dimension() - 1;
  const long double h = 1.0L / space.elements();
  for (int e = 0; e < space.elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto local = element_basis<long double>(space, e, rule.nodes[q]);
      const auto& f = derivative ? local.derivatives : local.values;
      for (int a = 0; a <= p; ++a) {
        const int ga = local.first + a;
        if (ga == 0 || ga == last) continue;
        for (int b = a; b <= p; ++b) {
          const int gb = local.first + b;
          if (gb == 0 || gb == last) continue;
          out.add(ga - 1, gb - 1, rule.weights[q] * h * f[a] * f[b]);
        }
      }
    }
  }
}

SymBandMatrix kron_sum(const SymBandMatrix& a, const SymBandMatrix& b, const SymBandMatrix& c,
                       const SymBandMatrix* d) {
  // a (x) b + c (x) d, all factors n x n with the same bandwidth.
  const int n = a.size();
  const int bw = a.bandwidth();
  SymBandMatrix out(n * n, bw * n + bw);
  for (int i1 = 0; i1 < n; ++i1) {
    for (int j1 = i1; j1 < std::min(n, i1 + bw + 1); ++j1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int j2 = std::max(0, i2 - bw); j2 < std::min(n, i2 + bw + 1); ++j2) {
          const int r = i1 * n + i2;
          const int s = j1 * n + j2;
          if (s < r) continue;
          long double v = a.entry(i1, j1) * b.entry(i2, j2);
          if (d != nullptr) v += c.entry(i1, j1) * d->entry(i2, j2);
          if (v != 0.0L) out.set(r, s, v);
        }
      }
    }
  }
  return out;
}

}  // namespace

MatrixPair assemble_1d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const QuadratureRule& mass_rule) {
  const int p = space.degree();
  if (!stiff_rule.stiffness_exact_for(p)) {
    throw std::invalid_argument("stiffness rule " + stiff_rule.label +
                                " is not exact for degree " + std::to_string(p));
  }
  const int n = space.dirichlet_dimension();
  MatrixPair pair{SymBandMatrix(n, p), SymBandMatrix(n, p), space, 1, stiff_rule.label,
                  mass_rule.label};
  accumulate(space, stiff_rule, true, pair.K);
  accumulate(space, mass_rule, false, pair.M);
  return pair;
}

MatrixPair assemble_1d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const BlendedRule& mass_rule) {
  return assemble_1d(space, stiff_rule, mass_rule.combined());
}

MatrixPair assemble_1d_dmm(const BSplineSpace& space) {
  const int p = space.degree();
  MatrixPair pair = assemble_1d(space, gauss_legendre(p + 1), optimal_blend(p, BlendPair::gl));
  pair.mass_label = "DMM";
  return pair;
}

MatrixPair assemble_1d_dmm_rule(const BSplineSpace& space, int branch) {
  const int p = space.degree();
  MatrixPair pair = assemble_1d(space, gauss_legendre(p + 1), dmm_rule(p, branch));
  return pair;
}

MatrixPair assemble_2d(const MatrixPair& one_d, std::size_t max_dofs) {
  if (one_d.dimension != 1) throw std::invalid_argument("assemble_2d needs a 1D pair");
  const std::size_t n = static_cast<std::size_t>(one_d.K.size());
  if (n * n > max_dofs) {
    throw DimensionCapError("2D system with " + std::to_string(n * n) +
                            " unknowns exceeds the cap of " + std::to_string(max_dofs));
  }
  MatrixPair out;
  out.K = kron_sum(one_d.K, one_d.M, one_d.M, &one_d.K);
  out.M = kron_sum(one_d.M, one_d.M, one_d.M, nullptr);
  out.space = one_d.space;
  out.dimension = 2;
  out.stiffness_label = one_d.stiffness_label;
  out.mass_label = one_d.mass_label;
  return out;
}

MatrixPair assemble_2d(const BSplineSpace& space, const QuadratureRule& stiff_rule,
                       const QuadratureRule& mass_rule, std::size_t max_dofs) {
  const std::size_t n = static_cast<std::size_t>(space.dirichlet_dimension());
  if (n * n > max_dofs) {
    throw DimensionCapError("2D system with " + std::to_string(n * n) +
                            " unknowns exceeds the cap of " + std::to_string(max_dofs));
  }
  return assemble_2d(assemble_1d(space, stiff_rule, mass_rule), max_dofs);
}

}  // namespace isodmm
