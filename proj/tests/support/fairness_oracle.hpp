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
#include <cmath>
#include <cstddef>
#include <vector>

namespace infosub::testing {

// Independent oracle: nested counting loops straight from the definitions.
struct BruteFairness {
  double accuracy, ba, gap_rms, gap_max;
};

inline BruteFairness brute_fairness(const std::vector<int>& p, const std::vector<int>& t, const std::vector<int>& c, int k) {
  BruteFairness b{0, 0, 0, 0};
  const auto n = p.size();
  for (std::size_t i = 0; i < n; ++i) b.accuracy += p[i] == t[i];
  b.accuracy /= static_cast<double>(n);
  int recall_classes = 0, gap_classes = 0;
  double sq = 0;
  for (int y = 0; y < k; ++y) {
    double num = 0, den = 0;
    double tpr[2] = {0, 0};
    bool has[2] = {false, false};
    for (int g = 0; g < 2; ++g) {
      double gn = 0, gd = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == g && t[i] == y) {
          gd += 1;
          if (p[i] == y) gn += 1;
        }
      }
      num += gn;
      den += gd;
      if (gd > 0) {
        has[g] = true;
        tpr[g] = gn / gd;
      }
    }
    if (den > 0) {
      b.ba += num / den;
      ++recall_classes;
    }
    if (has[0] && has[1]) {
      const double gap = tpr[0] - tpr[1];
      sq += gap * gap;
      b.gap_max = std::max(b.gap_max, std::abs(gap));
      ++gap_classes;
    }
  }
  b.ba /= recall_classes;
  b.gap_rms = gap_classes ? std::sqrt(sq / gap_classes) : 0.0;
  return b;
}

}  // namespace infosub::testing
