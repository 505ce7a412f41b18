#include <cmath>

#include "doctest.h"
#include "lyrank/balance.hpp"
#include "lyrank/error.hpp"
#include "lyrank/rng.hpp"

using namespace lyrank;

namespace {

Matrix random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix m(n, d);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

// Weight t with p = a + t (b - a), or NaN if p is off the line through a, b.
double segment_weight(std::span<const double> a, std::span<const double> b,
                      std::span<const double> p) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (p[i] - a[i]) * (b[i] - a[i]);
    den += (b[i] - a[i]) * (b[i] - a[i]);
  }
  if (den == 0.0) return 0.0;
  const double t = num / den;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] + t * (b[i] - a[i]) - p[i]) > 1e-9) return NAN;
  }
  return t;
}

std::size_t count(const std::vector<int>& labels, int which) {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), which));
}

}  // namespace

TEST_SUITE("balance") {

TEST_CASE("knn_indices") {
  const auto pts = Matrix::from_rows({{0, 0}, {1, 0}, {3, 0}, {0, 2}});
  CHECK(knn_indices(pts, 0, 2) == std::vector<std::size_t>{1, 3});
  CHECK(knn_indices(pts, 2, 3) == std::vector<std::size_t>{1, 0, 3});
  // Equidistant neighbors resolve to the lower index.
  const auto tie = Matrix::from_rows({{0}, {1}, {-1}, {2}});
  CHECK(knn_indices(tie, 0, 1) == std::vector<std::size_t>{1});
  CHECK(knn_indices(tie, 0, 2) == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(knn_indices(tie, 0, 4), ValidationError);
}

TEST_CASE("two-point minority interpolates along the segment") {
  const auto m = Matrix::from_rows({{0, 0}, {1, 1}});
  const auto pts = smote_detailed(m, 6, {1, 3});
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].base == i % 2);
    CHECK(pts[i].neighbor == 1 - pts[i].base);
    CHECK(pts[i].values[0] == pts[i].values[1]);
    CHECK(pts[i].values[0] >= 0.0);
    CHECK(pts[i].values[0] <= 1.0);
  }
  CHECK(smote(m, 0, {1, 3}).rows() == 0);
}

TEST_CASE("synthetic points stay inside the convex hull") {
  const auto m = Matrix::from_rows({{0, 0}, {4, 0}, {0, 4}, {1, 1}, {4, 4}});
  for (const auto& p : smote_detailed(m, 200, {3, 11})) {
    CHECK(p.values[0] >= 0.0);
    CHECK(p.values[0] <= 4.0);
    CHECK(p.values[1] >= 0.0);
    CHECK(p.values[1] <= 4.0);
  }
}

TEST_CASE("every synthetic point lies on its base-neighbor segment") {
  const auto m = random_points(40, 6, 9);
  const auto pts = smote_detailed(m, 500, {5, 21});
  for (const auto& p : pts) {
    const auto knn = knn_indices(m, p.base, 5);
    CHECK(std::find(knn.begin(), knn.end(), p.neighbor) != knn.end());
    const double t = segment_weight(m.row(p.base), m.row(p.neighbor), p.values);
    REQUIRE(!std::isnan(t));
    CHECK(t >= -1e-9);
    CHECK(t <= 1.0 + 1e-9);
    CHECK(std::abs(t - p.lambda) < 1e-9);
  }
}

TEST_CASE("balance_classes reaches parity") {
  SUBCASE("991 vs 631") {
    const auto rows = random_points(1622, 4, 3);
    std::vector<int> labels(1622, -1);
    std::fill(labels.begin(), labels.begin() + 991, 1);
    const auto b = balance_classes(rows, labels, {5, 1});
    CHECK(b.synthetic == 360);
    CHECK(b.rows.rows() == 1982);
    CHECK(count(b.labels, 1) == 991);
    CHECK(count(b.labels, -1) == 991);
    for (std::size_t r = 0; r < 1622; ++r) {
      CHECK(b.labels[r] == labels[r]);
    }
    CHECK(std::equal(rows.data().begin(), rows.data().end(), b.rows.data().begin()));
  }
  SUBCASE("already balanced") {
    const auto rows = random_points(6, 2, 4);
    const auto b = balance_classes(rows, {1, -1, 1, -1, 1, -1}, {2, 1});
    CHECK(b.synthetic == 0);
    CHECK(b.rows == rows);
  }
  SUBCASE("minority TOP, k = 1") {
    const auto rows = Matrix::from_rows({{0}, {10}, {20}, {30}, {100}, {101}});
    const auto b = balance_classes(rows, {-1, -1, -1, -1, 1, 1}, {1, 5});
    CHECK(b.synthetic == 2);
    CHECK(count(b.labels, 1) == 4);
    for (std::size_t r = 6; r < 8; ++r) {
      CHECK(b.labels[r] == 1);
      CHECK(b.rows(r, 0) >= 100.0);
      CHECK(b.rows(r, 0) <= 101.0);
    }
  }
}

TEST_CASE("parity property over random imbalances") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t a = 2 + rng.below(40), b = 2 + rng.below(40);
    const auto rows = random_points(a + b, 3, trial);
    std::vector<int> labels(a, 1);
    labels.resize(a + b, -1);
    const auto out = balance_classes(rows, labels, {1, static_cast<std::uint64_t>(trial)});
    CHECK(count(out.labels, 1) == count(out.labels, -1));
    CHECK(out.synthetic == (a > b ? a - b : b - a));
  }
}

TEST_CASE("neighbors are drawn from the minority only") {
  // Majority points sit between minority points; they must never be used.
  const auto rows = Matrix::from_rows({{0}, {10}, {20}, {5}, {15}, {6}, {14}, {7}});
  const std::vector<int> labels{1, 1, 1, -1, -1, -1, -1, -1};
  const auto out = balance_classes(rows, labels, {1, 2});
  for (std::size_t r = rows.rows(); r < out.rows.rows(); ++r) {
    const double v = out.rows(r, 0);
    CHECK(v >= 0.0);
    CHECK(v <= 20.0);
  }
  const auto pts = smote_detailed(Matrix::from_rows({{0}, {10}, {20}}), 9, {1, 2});
  for (const auto& p : pts) {
    const double lo = std::min(p.base, p.neighbor) * 10.0;
    CHECK(p.values[0] >= lo);
    CHECK(p.values[0] <= lo + 10.0);
  }
}

TEST_CASE("seeded determinism") {
  const auto m = random_points(20, 3, 1);
  CHECK(smote(m, 30, {5, 8}) == smote(m, 30, {5, 8}));
  CHECK_FALSE(smote(m, 30, {5, 8}) == smote(m, 30, {5, 9}));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(smote(Matrix::from_rows({{1}}), 3, {1, 0}), ValidationError);
  CHECK_THROWS_AS(smote(Matrix::from_rows({{1}, {2}}), 3, {2, 0}), ValidationError);
  CHECK_THROWS_AS(smote(Matrix::from_rows({{1}, {2}}), 3, {0, 0}), ValidationError);
  CHECK_THROWS_AS(balance_classes(Matrix::from_rows({{1}, {2}}), {1, 1}, {1, 0}),
                  ValidationError);
}

}  // TEST_SUITE
