#include "lyrank/balance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lyrank/error.hpp"
#include "lyrank/rng.hpp"
#include "lyrank/simd.hpp"

namespace lyrank {

std::vector<std::size_t> knn_indices(const Matrix& points, std::size_t query, std::size_t k) {
  const std::size_t n = points.rows();
  if (query >= n) throw ValidationError("knn_indices: query index out of range");
  if (k >= n) {
    throw ValidationError("knn_indices: k=" + std::to_string(k) + " needs more than " +
                          std::to_string(n) + " points");
  }
  std::vector<double> dist(n);
  simd::active().squared_distance_rows(points.data().data(), n, points.cols(),
                                       points.row(query).data(), dist.data());
  std::vector<std::size_t> idx;
  idx.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != query) idx.push_back(i);
  }
  const auto closer = [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), closer);
  idx.resize(k);
  return idx;
}

std::vector<SyntheticPoint> smote_detailed(const Matrix& minority, std::size_t n_synthetic,
                                           const SmoteConfig& cfg) {
  if (n_synthetic == 0) return {};
  const std::size_t m = minority.rows();
  if (m < 2) throw ValidationError("smote: minority class needs at least 2 samples");
  if (cfg.k_neighbors < 1 || static_cast<std::size_t>(cfg.k_neighbors) >= m) {
    throw ValidationError("smote: k_neighbors=" + std::to_string(cfg.k_neighbors) +
                          " must be in [1, " + std::to_string(m - 1) + "]");
  }
  const auto k = static_cast<std::size_t>(cfg.k_neighbors);

  std::vector<std::vector<std::size_t>> neighbors(std::min(m, n_synthetic));
  for (std::size_t b = 0; b < neighbors.size(); ++b) neighbors[b] = knn_indices(minority, b, k);

  std::vector<SyntheticPoint> out;
  out.reserve(n_synthetic);
  for (std::size_t i = 0; i < n_synthetic; ++i) {
    SplitMix64 rng(derive_seed(cfg.seed, i));
    SyntheticPoint p;
    p.base = i % m;
    p.neighbor = neighbors[p.base][rng.below(k)];
    p.lambda = rng.uniform_closed();
    const auto x = minority.row(p.base);
    const auto nn = minority.row(p.neighbor);
    p.values.resize(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) p.values[c] = x[c] + p.lambda * (nn[c] - x[c]);
    out.push_back(std::move(p));
  }
  return out;
}

Matrix smote(const Matrix& minority, std::size_t n_synthetic, const SmoteConfig& cfg) {
  Matrix out(0, minority.cols());
  for (const auto& p : smote_detailed(minority, n_synthetic, cfg)) out.append_row(p.values);
  return out;
}

BalancedSet balance_classes(const Matrix& rows, const std::vector<int>& labels,
                            const SmoteConfig& cfg) {
  if (rows.rows() != labels.size()) throw ValidationError("balance_classes: label count mismatch");
  const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw ValidationError("balance_classes: both classes must be present");

  BalancedSet out{rows, labels, 0};
  if (pos == neg) return out;

  const int minority_label = pos < neg ? 1 : -1;
  std::vector<std::size_t> minority_idx;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == minority_label) minority_idx.push_back(i);
  }
  const Matrix minority = rows.select_rows(minority_idx);
  const std::size_t need = std::max(pos, neg) - minority_idx.size();
  const Matrix synth = smote(minority, need, cfg);
  for (std::size_t r = 0; r < synth.rows(); ++r) {
    out.rows.append_row(synth.row(r));
    out.labels.push_back(minority_label);
  }
  out.synthetic = need;
  return out;
}

}  // namespace lyrank
