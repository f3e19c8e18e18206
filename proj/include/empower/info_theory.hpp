#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Discrete information-theoretic primitives (all results in nats) and a
// Blahut-Arimoto channel capacity solver.
//
// The solver doubles as an independent oracle for the deterministic
// empowerment fast path: for a deterministic channel the capacity is the log
// of the number of distinct outputs reached.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "empower/errors.hpp"

namespace empower::info {

namespace config {
constexpr double kNormTolerance = 1e-9;
/// Probabilities below this are treated as zero inside logarithms.
constexpr double kLogFloor = 1e-15;
constexpr double kDefaultCapacityTol = 1e-9;
constexpr int kDefaultMaxIter = 10000;
}  // namespace config

namespace detail {

inline void check_probability_vector(std::span<const double> probs, const char* what) {
  if (probs.empty()) {
    throw ValidationError(std::string(what) + ": empty probability vector");
  }
  double sum = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(what) + ": negative or non-finite probability");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > config::kNormTolerance) {
    std::ostringstream os;
    os << what << ": probabilities sum to " << sum << ", expected 1";
    throw ValidationError(os.str());
  }
}

/// -p ln p with 0 ln 0 = 0.
inline double plogp(double p) { return p < config::kLogFloor ? 0.0 : -p * std::log(p); }

}  // namespace detail

/// A validated probability vector.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    detail::check_probability_vector(probs_, "Distribution");
  }

  static Distribution uniform(std::size_t n) {
    if (n == 0) throw ValidationError("Distribution: uniform over zero outcomes");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  std::size_t support_size() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
  }

 private:
  std::vector<double> probs_;
};

/// Dense row-major matrix of non-negative reals. Used both for joint
/// distributions p(x, y) (rows = x) and for channels p(y | x).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ValidationError("Matrix: data size does not match dimensions");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("Matrix: ragged rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> values() const noexcept { return data_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A row-stochastic matrix: row x holds p(y | x).
class Channel {
 public:
  explicit Channel(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.cols() == 0) {
      throw ValidationError("Channel: needs at least one input and one output");
    }
    for (std::size_t r = 0; r < m_.rows(); ++r) {
      detail::check_probability_vector(m_.row(r), "Channel row");
    }
  }

  /// Builds the channel of a deterministic map input index -> output index.
  static Channel deterministic(std::span<const std::size_t> output_of_input,
                               std::size_t num_outputs) {
    Matrix m(output_of_input.size(), num_outputs);
    for (std::size_t x = 0; x < output_of_input.size(); ++x) {
      if (output_of_input[x] >= num_outputs) {
        throw ValidationError("Channel: output index out of range");
      }
      m(x, output_of_input[x]) = 1.0;
    }
    return Channel(std::move(m));
  }

  std::size_t inputs() const noexcept { return m_.rows(); }
  std::size_t outputs() const noexcept { return m_.cols(); }
  double operator()(std::size_t x, std::size_t y) const { return m_(x, y); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

struct CapacityResult {
  double capacity_nats = 0.0;
  Distribution achieving_input = Distribution::uniform(1);
  int iterations = 0;
  bool converged = false;
  /// Upper minus lower capacity bound at termination.
  double bound_gap = 0.0;
};

/// H(X) = -sum p ln p.
inline double entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs()) h += detail::plogp(v);
  return h;
}

namespace detail {

inline void check_joint(const Matrix& joint) {
  if (joint.rows() == 0 || joint.cols() == 0) throw ValidationError("joint: empty matrix");
  check_probability_vector(joint.values(), "joint");
}

inline std::vector<double> row_marginal(const Matrix& joint) {
  std::vector<double> px(joint.rows(), 0.0);
  for (std::size_t x = 0; x < joint.rows(); ++x)
    for (double v : joint.row(x)) px[x] += v;
  return px;
}

inline std::vector<double> col_marginal(const Matrix& joint) {
  std::vector<double> py(joint.cols(), 0.0);
  for (std::size_t x = 0; x < joint.rows(); ++x)
    for (std::size_t y = 0; y < joint.cols(); ++y) py[y] += joint(x, y);
  return py;
}

}  // namespace detail

/// H(X | Y) for a joint p(x, y) with rows indexed by x.
inline double conditional_entropy(const Matrix& joint) {
  detail::check_joint(joint);
  const auto py = detail::col_marginal(joint);
  double h = 0.0;
  for (std::size_t y = 0; y < joint.cols(); ++y) {
    if (py[y] < config::kLogFloor) continue;
    double hy = 0.0;
    for (std::size_t x = 0; x < joint.rows(); ++x) hy += detail::plogp(joint(x, y) / py[y]);
    h += py[y] * hy;
  }
  return h;
}

/// I(X; Y) = H(X) - H(X | Y).
inline double mutual_information(const Matrix& joint) {
  detail::check_joint(joint);
  double hx = 0.0;
  for (double v : detail::row_marginal(joint)) hx += detail::plogp(v);
  return std::max(0.0, hx - conditional_entropy(joint));
}

/// Blahut-Arimoto capacity of `ch`, starting from the uniform input.
///
/// Each iteration computes the output marginal q, the per-input divergences
/// D_x = KL(p(.|x) || q), the bounds sum_x p_x D_x <= C <= max_x D_x, and then
/// reweights p_x by exp(D_x). Stops when the bound gap drops below `tol`.
/// If `max_iter` runs out first the lower bound is returned with
/// `converged = false`.
inline CapacityResult channel_capacity(const Channel& ch,
                                       double tol = config::kDefaultCapacityTol,
                                       int max_iter = config::kDefaultMaxIter) {
  if (!(tol > 0.0)) throw ValidationError("channel_capacity: tol must be positive");
  const std::size_t nx = ch.inputs();
  const std::size_t ny = ch.outputs();
  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> q(ny);
  std::vector<double> div(nx);

  CapacityResult result;
  for (int it = 0;; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (p[x] == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * ch(x, y);
    }
    double lower = 0.0;
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < nx; ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double w = ch(x, y);
        if (w < config::kLogFloor) continue;
        d += w * std::log(w / q[y]);
      }
      div[x] = d;
      lower += p[x] * d;
      upper = std::max(upper, d);
    }
    lower = std::max(0.0, lower);
    const double gap = upper - lower;
    if (gap < tol || it >= max_iter) {
      result.capacity_nats = lower;
      result.iterations = it;
      result.converged = gap < tol;
      result.bound_gap = gap;
      break;
    }
    // Shift by the max divergence before exponentiating.
    double norm = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      p[x] *= std::exp(div[x] - upper);
      norm += p[x];
    }
    for (double& v : p) v /= norm;
  }
  // Renormalize exactly so the achieving input passes validation.
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= s;
  result.achieving_input = Distribution(std::move(p));
  return result;
}

/// Reads "|X| |Y|" followed by |X| rows of |Y| whitespace-separated reals.
inline Channel read_channel(std::istream& in) {
  long long nx = 0;
  long long ny = 0;
  if (!(in >> nx >> ny) || nx < 1 || ny < 1) {
    throw ConfigError("channel file: expected positive header \"|X| |Y|\"");
  }
  Matrix m(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
  for (long long x = 0; x < nx; ++x) {
    for (long long y = 0; y < ny; ++y) {
      double v = 0.0;
      if (!(in >> v)) throw ConfigError("channel file: too few matrix entries");
      m(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = v;
    }
  }
  std::string extra;
  if (in >> extra) throw ConfigError("channel file: trailing data after matrix");
  return Channel(std::move(m));
}

/// Display-only conversion.
constexpr double nats_to_bits(double nats) noexcept {
  return nats / 0.693147180559945309417232121458176568;
}

}  // namespace empower::info
