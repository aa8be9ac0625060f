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
#include <map>
#include <vector>

#include "infosub/numerics/matrix.hpp"

namespace infosub::mi {

// Plug-in Shannon entropy (bits) of an equal-width histogram spanning the
// observed range of every column. Multi-column inputs use the joint histogram.
inline double plugin_entropy(const Matrix& x, int bins) {
  if (bins < 2) throw std::invalid_argument("plugin_entropy: bins must be >= 2");
  if (x.rows() == 0) throw std::invalid_argument("plugin_entropy: empty input");
  require_finite(x, "plugin_entropy input");
  const Index n = x.rows(), d = x.cols();
  const RowVector lo = x.colwise().minCoeff();
  const RowVector hi = x.colwise().maxCoeff();

  auto bin_of = [&](Index r, Index c) {
    const double width = hi(c) - lo(c);
    if (width <= 0.0) return 0;
    const int b = static_cast<int>(std::floor((x(r, c) - lo(c)) / width * bins));
    return std::clamp(b, 0, bins - 1);
  };

  std::map<std::vector<int>, Index> counts;
  std::vector<int> key(static_cast<std::size_t>(d));
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < d; ++c) key[static_cast<std::size_t>(c)] = bin_of(r, c);
    ++counts[key];
  }
  double h = 0.0;
  for (const auto& [cell, count] : counts) {
    const double p = static_cast<double>(count) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace infosub::mi
