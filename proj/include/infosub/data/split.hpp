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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infosub/data/dataset.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::data {

struct SplitSpec {
  enum class Mode { iid, by_domain };
  Mode mode = Mode::iid;
  // iid: seeded shuffle, then the first train_n rows train and the next
  // test_n rows test.
  Index train_n = 0;
  Index test_n = 0;
  RngSeed seed{0};
  // by_domain: rows partitioned by the category name of `domain_column`.
  std::string domain_column;
  std::vector<std::string> train_domains;
  std::vector<std::string> test_domains;

  static SplitSpec iid(Index train_n, Index test_n, RngSeed seed) {
    SplitSpec s;
    s.mode = Mode::iid;
    s.train_n = train_n;
    s.test_n = test_n;
    s.seed = seed;
    return s;
  }

  static SplitSpec by_domain(std::string column, std::vector<std::string> train, std::vector<std::string> test) {
    SplitSpec s;
    s.mode = Mode::by_domain;
    s.domain_column = std::move(column);
    s.train_domains = std::move(train);
    s.test_domains = std::move(test);
    return s;
  }
};

struct SplitResult {
  Dataset train;
  Dataset test;
};

inline SplitResult split(const Dataset& dataset, const SplitSpec& spec) {
  std::vector<Index> train_rows, test_rows;
  if (spec.mode == SplitSpec::Mode::iid) {
    if (spec.train_n < 1 || spec.test_n < 0) throw std::invalid_argument("split: train count must be >= 1");
    if (spec.train_n + spec.test_n > dataset.rows()) {
      throw std::invalid_argument("split: requested " + std::to_string(spec.train_n + spec.test_n) + " rows but dataset has " +
                                  std::to_string(dataset.rows()));
    }
    Rng rng(spec.seed);
    const auto perm = rng.permutation(dataset.rows());
    train_rows.assign(perm.begin(), perm.begin() + spec.train_n);
    test_rows.assign(perm.begin() + spec.train_n, perm.begin() + spec.train_n + spec.test_n);
  } else {
    const auto& g = dataset.group(spec.domain_column);
    if (g.width != 1 || g.categories.empty()) {
      throw std::invalid_argument("split: domain column '" + spec.domain_column + "' must be a categorical label column");
    }
    auto code_of = [&](const std::string& name) {
      auto it = std::find(g.categories.begin(), g.categories.end(), name);
      if (it == g.categories.end()) throw std::invalid_argument("split: unknown domain '" + name + "'");
      return static_cast<int>(it - g.categories.begin());
    };
    std::set<int> train_codes, test_codes;
    for (const auto& n : spec.train_domains) train_codes.insert(code_of(n));
    for (const auto& n : spec.test_domains) test_codes.insert(code_of(n));
    if (train_codes.empty() || test_codes.empty()) throw std::invalid_argument("split: empty domain list");
    for (int c : train_codes) {
      if (test_codes.count(c)) throw std::invalid_argument("split: a domain is in both train and test");
    }
    const auto labels = dataset.labels(spec.domain_column);
    std::map<int, Index> seen;
    for (Index r = 0; r < dataset.rows(); ++r) {
      const int c = labels[static_cast<std::size_t>(r)];
      if (train_codes.count(c)) {
        train_rows.push_back(r);
        ++seen[c];
      } else if (test_codes.count(c)) {
        test_rows.push_back(r);
        ++seen[c];
      }
    }
    for (const auto& codes : {train_codes, test_codes}) {
      for (int c : codes) {
        if (!seen.count(c)) {
          throw std::invalid_argument("split: domain '" + g.categories[static_cast<std::size_t>(c)] + "' has no rows");
        }
      }
    }
  }
  return SplitResult{dataset.take_rows(train_rows), dataset.take_rows(test_rows)};
}

// Z-scores continuous feature columns of both splits with statistics from the
// training split.
inline void standardize_continuous(Dataset& train, Dataset& test) {
  for (std::size_t i = 0; i < train.groups.size(); ++i) {
    auto& g = train.groups[i];
    if (g.kind != ColumnKind::continuous || g.role != Role::feature || g.standardization) continue;
    const auto col = train.values.col(g.offset);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().mean();
    const double sd = std::sqrt(var) > 1e-12 ? std::sqrt(var) : 1.0;
    train.values.col(g.offset) = (col.array() - mean) / sd;
    test.values.col(g.offset) = (test.values.col(g.offset).array() - mean) / sd;
    g.standardization = std::make_pair(mean, sd);
    test.groups[i].standardization = g.standardization;
  }
}

}  // namespace infosub::data
