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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infosub::eval {

// Group fairness of a classifier with respect to a binary protected
// attribute C. tpr[c][y] = P(Yhat = y | C = c, Y = y); gap[y] = tpr[0][y] -
// tpr[1][y]. A class missing from either group has no gap and is listed in
// `excluded_classes`.
struct FairnessReport {
  double accuracy = 0.0;
  double ba = 0.0;
  double gap_rms = 0.0;
  double gap_max = 0.0;
  int num_classes = 0;
  std::vector<std::vector<std::optional<double>>> tpr;  // [protected value][class]
  std::vector<std::optional<double>> gap;               // per class
  std::vector<int> excluded_classes;
  std::vector<std::string> warnings;
};

inline FairnessReport fairness_metrics(const std::vector<int>& preds, const std::vector<int>& truth,
                                       const std::vector<int>& protected_attr, int num_classes = 0) {
  if (preds.empty()) throw std::invalid_argument("fairness_metrics: empty input");
  if (preds.size() != truth.size() || preds.size() != protected_attr.size()) {
    throw std::invalid_argument("fairness_metrics: predictions, labels and protected values differ in length");
  }
  for (int c : protected_attr) {
    if (c != 0 && c != 1) throw std::invalid_argument("fairness_metrics: protected value outside {0, 1}");
  }
  int k = num_classes;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] < 0 || truth[i] < 0) throw std::invalid_argument("fairness_metrics: negative class label");
    k = std::max({k, preds[i] + 1, truth[i] + 1});
  }

  std::vector<std::vector<long>> hit(2, std::vector<long>(static_cast<std::size_t>(k), 0));
  std::vector<std::vector<long>> support = hit;
  long correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto c = static_cast<std::size_t>(protected_attr[i]);
    const auto y = static_cast<std::size_t>(truth[i]);
    ++support[c][y];
    if (preds[i] == truth[i]) {
      ++hit[c][y];
      ++correct;
    }
  }

  FairnessReport r;
  r.num_classes = k;
  r.accuracy = static_cast<double>(correct) / static_cast<double>(preds.size());
  r.tpr.assign(2, std::vector<std::optional<double>>(static_cast<std::size_t>(k)));
  r.gap.assign(static_cast<std::size_t>(k), std::nullopt);
  double recall_sum = 0.0, gap_sq = 0.0;
  int recall_classes = 0, gap_classes = 0;
  for (std::size_t y = 0; y < static_cast<std::size_t>(k); ++y) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (support[c][y] > 0) r.tpr[c][y] = static_cast<double>(hit[c][y]) / static_cast<double>(support[c][y]);
    }
    const long n_y = support[0][y] + support[1][y];
    if (n_y > 0) {
      recall_sum += static_cast<double>(hit[0][y] + hit[1][y]) / static_cast<double>(n_y);
      ++recall_classes;
    }
    if (r.tpr[0][y] && r.tpr[1][y]) {
      const double g = *r.tpr[0][y] - *r.tpr[1][y];
      r.gap[y] = g;
      gap_sq += g * g;
      r.gap_max = std::max(r.gap_max, std::abs(g));
      ++gap_classes;
    } else if (n_y > 0) {
      r.excluded_classes.push_back(static_cast<int>(y));
      r.warnings.push_back("class " + std::to_string(y) + " has no support in one protected group; excluded from gaps");
    }
  }
  r.ba = recall_classes > 0 ? recall_sum / recall_classes : 0.0;
  r.gap_rms = gap_classes > 0 ? std::sqrt(gap_sq / gap_classes) : 0.0;
  return r;
}

}  // namespace infosub::eval
