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

#include <algorithm>
#include <numeric>
#include <vector>

#include "infosub/mi/entropy.hpp"
#include "infosub/mi/estimate.hpp"
#include "infosub/mi/ksg.hpp"
#include "infosub/numerics/matrix.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::mi {

// Row subset shared by every cell of one report: all rows when n fits in
// max_samples, otherwise a seeded sample kept in original order.
inline std::vector<Index> oracle_rows(Index n, const OracleConfig& cfg) {
  cfg.validate();
  if (n <= cfg.max_samples) {
    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    return all;
  }
  Rng rng(cfg.seed);
  auto rows = rng.sample_without_replacement(n, cfg.max_samples);
  std::sort(rows.begin(), rows.end());
  return rows;
}

// KSG mutual information and plug-in entropy on a fixed row subset, in bits.
class Oracle {
 public:
  Oracle(Index n, OracleConfig cfg) : cfg_(cfg), rows_(oracle_rows(n, cfg)), n_(n) {}

  double mi_bits(const Matrix& a, const Matrix& b) const {
    return ksg_mi(subset(a), subset(b), cfg_.ksg_k).value_bits;
  }
  double entropy_bits(const Matrix& a) const { return plugin_entropy(subset(a), cfg_.plugin_bins); }

  Index sample_count() const { return static_cast<Index>(rows_.size()); }
  const OracleConfig& config() const { return cfg_; }

 private:
  Matrix subset(const Matrix& m) const {
    if (m.rows() != n_) {
      throw ShapeError("oracle: expected " + std::to_string(n_) + " rows, got " + std::to_string(m.rows()));
    }
    return static_cast<Index>(rows_.size()) == n_ ? m : select_rows(m, rows_);
  }

  OracleConfig cfg_;
  std::vector<Index> rows_;
  Index n_;
};

}  // namespace infosub::mi
