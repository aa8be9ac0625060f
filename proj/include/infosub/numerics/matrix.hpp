/*
 * Copyright 2026 The infosub Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace infosub {

// Dense row-major 64-bit matrix; every batch and parameter block is one of these.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

// Raised when a loss, gradient or estimate stops being finite. Training runs
// abort on it instead of continuing with poisoned parameters.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string shape_string(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) throw NumericalError(what + ": non-finite entries");
}

inline void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericalError(what + ": non-finite value " + std::to_string(v));
}

// Horizontal concatenation of row-aligned blocks.
inline Matrix hconcat(std::span<const Matrix* const> blocks) {
  if (blocks.empty()) return Matrix();
  const Index rows = blocks.front()->rows();
  Index cols = 0;
  for (const Matrix* b : blocks) {
    if (b->rows() != rows) {
      throw ShapeError("hconcat: row mismatch " + shape_string(*b) + " vs " +
                       std::to_string(rows) + " rows");
    }
    cols += b->cols();
  }
  Matrix out(rows, cols);
  Index at = 0;
  for (const Matrix* b : blocks) {
    out.middleCols(at, b->cols()) = *b;
    at += b->cols();
  }
  return out;
}

inline Matrix hconcat(std::initializer_list<const Matrix*> blocks) {
  return hconcat(std::span<const Matrix* const>(blocks.begin(), blocks.size()));
}

inline Matrix select_rows(const Matrix& m, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

inline Matrix column_matrix(std::span<const double> values) {
  Matrix out(static_cast<Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Index>(i), 0) = values[i];
  return out;
}

// Per-column z-scoring. Zero-variance columns keep scale 1 so that a constant
// column maps to zeros instead of NaN.
struct Standardizer {
  RowVector mean;
  RowVector scale;

  static Standardizer fit(const Matrix& m) {
    Standardizer s;
    const double n = static_cast<double>(m.rows());
    s.mean = m.colwise().mean();
    s.scale.resize(m.cols());
    for (Index c = 0; c < m.cols(); ++c) {
      const double var = n > 0 ? (m.col(c).array() - s.mean(c)).square().sum() / n : 0.0;
      const double sd = std::sqrt(var);
      s.scale(c) = sd > 1e-12 ? sd : 1.0;
    }
    return s;
  }

  Matrix apply(const Matrix& m) const {
    if (m.cols() != mean.size()) {
      throw ShapeError("Standardizer: expected " + std::to_string(mean.size()) + " columns, got " +
                       std::to_string(m.cols()));
    }
    return ((m.rowwise() - mean).array().rowwise() / scale.array()).matrix();
  }

  Index dim() const { return mean.size(); }
};

}  // namespace infosub
