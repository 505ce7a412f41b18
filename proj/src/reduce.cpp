#include "lyrank/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lyrank/error.hpp"
#include "lyrank/simd.hpp"

namespace lyrank {

Standardizer fit_standardizer(const Matrix& m) {
  if (m.rows() < 2) throw ValidationError("fit_standardizer: need at least 2 rows");
  const auto n = static_cast<double>(m.rows());
  Standardizer s;
  s.means.assign(m.cols(), 0.0);
  s.stddevs.assign(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) s.means[c] += m(r, c);
  }
  for (auto& mu : s.means) mu /= n;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double d = m(r, c) - s.means[c];
      s.stddevs[c] += d * d;
    }
  }
  for (auto& sd : s.stddevs) sd = std::sqrt(sd / n);
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  if (x.size() != means.size()) {
    throw ValidationError("standardize: expected " + std::to_string(means.size()) +
                          " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    out[c] = stddevs[c] > 0.0 ? (x[c] - means[c]) / stddevs[c] : 0.0;
  }
  return out;
}

Matrix Standardizer::apply(const Matrix& m) const {
  Matrix out(0, means.size());
  for (std::size_t r = 0; r < m.rows(); ++r) out.append_row(apply(m.row(r)));
  return out;
}

Matrix standardize(const Matrix& m, const Standardizer& s) { return s.apply(m); }

Matrix covariance(const Matrix& centered) {
  if (centered.rows() < 2) throw ValidationError("covariance: need at least 2 rows");
  const Matrix cols = centered.transposed();
  const std::size_t d = centered.cols();
  const auto n = static_cast<double>(centered.rows());
  const auto& k = simd::active();
  Matrix cov(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = k.dot(cols.row(i).data(), cols.row(j).data(), cols.cols()) / n;
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  return cov;
}

EigenDecomposition eigendecompose_symmetric(const Matrix& input) {
  const std::size_t d = input.rows();
  if (input.cols() != d) throw ValidationError("eigendecompose: matrix is not square");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > 1e-10) {
        throw ValidationError("eigendecompose: matrix is not symmetric");
      }
    }
  }

  Matrix a = input;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) a(j, i) = a(i, j);
  }
  Matrix v(d, d);
  for (std::size_t i = 0; i < d; ++i) v(i, i) = 1.0;

  double frob = 0.0;
  for (const double x : a.data()) frob += x * x;
  const double tol = 1e-12 * std::max(1.0, std::sqrt(frob));

  auto max_off = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) m = std::max(m, std::abs(a(i, j)));
    }
    return m;
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; max_off() >= tol; ++sweep) {
    if (sweep == kMaxSweeps) {
      throw NumericalError("eigendecompose: Jacobi did not converge in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Symmetric Schur: choose the smaller rotation angle.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        // Columns of v accumulate the eigenvectors.
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.vectors = Matrix(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t col = order[r];
    out.values.push_back(a(col, col));
    std::size_t arg = 0;
    for (std::size_t k = 1; k < d; ++k) {
      if (std::abs(v(k, col)) > std::abs(v(arg, col))) arg = k;
    }
    const double sign = v(arg, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < d; ++k) out.vectors(r, k) = sign * v(k, col);
  }
  return out;
}

std::size_t select_k(std::span<const double> eigenvalues, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("variance threshold must be in (0, 1]");
  }
  const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  if (!(total > 0.0)) throw NumericalError("select_k: spectrum is all zero");
  double running = 0.0;
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    running += eigenvalues[j];
    if (running / total >= threshold) return j + 1;
  }
  return eigenvalues.size();
}

std::vector<double> PcaModel::project(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw ValidationError("project: expected dimension " + std::to_string(input_dim()) +
                          ", got " + std::to_string(x.size()));
  }
  std::vector<double> out(k);
  simd::active().dot_rows(components.data().data(), k, input_dim(), x.data(), out.data());
  return out;
}

Matrix PcaModel::project(const Matrix& m) const {
  Matrix out(0, k);
  for (std::size_t r = 0; r < m.rows(); ++r) out.append_row(project(m.row(r)));
  return out;
}

PcaModel fit_pca(const Matrix& standardized, double threshold) {
  const auto eig = eigendecompose_symmetric(covariance(standardized));
  PcaModel model;
  model.variance_threshold = threshold;
  model.eigenvalues = eig.values;
  for (auto& ev : model.eigenvalues) {
    if (ev < 0.0) {
      if (ev < -1e-10) throw NumericalError("fit_pca: covariance has a negative eigenvalue");
      ev = 0.0;
    }
  }
  model.k = select_k(model.eigenvalues, threshold);
  const std::size_t d = standardized.cols();
  model.components = Matrix(model.k, d);
  for (std::size_t r = 0; r < model.k; ++r) {
    const auto src = eig.vectors.row(r);
    std::copy(src.begin(), src.end(), model.components.row(r).begin());
  }
  return model;
}

}  // namespace lyrank
