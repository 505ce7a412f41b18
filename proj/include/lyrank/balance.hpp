#pragma once

#include <cstdint>
#include <vector>

#include "lyrank/matrix.hpp"

namespace lyrank {

struct SmoteConfig {
  int k_neighbors = 5;
  std::uint64_t seed = 0;
};

/// Indices of the k rows nearest to row `query` (Euclidean), excluding the
/// query itself, nearest first; ties go to the lower index.
std::vector<std::size_t> knn_indices(const Matrix& points, std::size_t query, std::size_t k);

/// One generated point together with its provenance.
struct SyntheticPoint {
  std::vector<double> values;
  std::size_t base = 0;      // index into the minority rows
  std::size_t neighbor = 0;  // index into the minority rows
  double lambda = 0.0;
};

/// Generates n_synthetic points. Base samples cycle through the minority
/// rows in order; point i draws its neighbor and interpolation weight from
/// the substream derive_seed(cfg.seed, i).
std::vector<SyntheticPoint> smote_detailed(const Matrix& minority, std::size_t n_synthetic,
                                           const SmoteConfig& cfg);
Matrix smote(const Matrix& minority, std::size_t n_synthetic, const SmoteConfig& cfg);

struct BalancedSet {
  Matrix rows;
  std::vector<int> labels;  // +1 / -1
  std::size_t synthetic = 0;
};

/// Appends synthetic minority rows until both classes have equal counts.
/// Original rows come first and are left untouched.
BalancedSet balance_classes(const Matrix& rows, const std::vector<int>& labels,
                            const SmoteConfig& cfg);

}  // namespace lyrank
