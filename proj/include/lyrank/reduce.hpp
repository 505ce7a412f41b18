#pragma once

#include <span>
#include <vector>

#include "lyrank/matrix.hpp"

namespace lyrank {

/// Per-feature z-scoring with population standard deviations. Columns with
/// zero spread map to 0.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stddevs;

  std::vector<double> apply(std::span<const double> x) const;
  Matrix apply(const Matrix& m) const;
};

Standardizer fit_standardizer(const Matrix& m);
Matrix standardize(const Matrix& m, const Standardizer& s);

/// (1/n) X^T X of an already-centered matrix, symmetrized.
Matrix covariance(const Matrix& centered);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the unit eigenvector for values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi. Converged when the largest off-diagonal magnitude drops
/// below 1e-12 * max(1, ||A||_F); at most 100 sweeps. Each eigenvector is
/// signed so its largest-magnitude entry (lowest index on ties) is positive.
EigenDecomposition eigendecompose_symmetric(const Matrix& a);

/// Smallest k whose leading eigenvalues reach `threshold` of the total.
std::size_t select_k(std::span<const double> eigenvalues, double threshold);

struct PcaModel {
  Matrix components;             // k x d, orthonormal rows
  std::vector<double> eigenvalues;  // all d, descending, clamped at 0
  std::size_t k = 0;
  double variance_threshold = 0.6;

  std::size_t input_dim() const noexcept { return components.cols(); }
  std::vector<double> project(std::span<const double> x) const;
  Matrix project(const Matrix& m) const;
};

/// Input must already be standardized (column means zero).
PcaModel fit_pca(const Matrix& standardized, double threshold = 0.6);

}  // namespace lyrank
