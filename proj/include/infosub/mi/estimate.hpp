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
#include <numbers>
#include <stdexcept>
#include <string>

#include "infosub/numerics/matrix.hpp"

namespace infosub::mi {

enum class Estimator { dv, smile, ksg, plugin };

inline const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::dv: return "dv";
    case Estimator::smile: return "smile";
    case Estimator::ksg: return "ksg";
    case Estimator::plugin: return "plugin";
  }
  return "?";
}

inline constexpr double nats_to_bits(double nats) { return nats / std::numbers::ln2; }
inline constexpr double bits_to_nats(double bits) { return bits * std::numbers::ln2; }

// A mutual-information value. Neural estimates are finite-sample lower bounds
// and may be negative.
struct MiEstimate {
  double value_nats = 0.0;
  double value_bits = 0.0;
  Index batch_size = 0;
  Estimator estimator = Estimator::dv;

  static MiEstimate from_nats(double nats, Index n, Estimator e) {
    return MiEstimate{nats, nats_to_bits(nats), n, e};
  }
};

struct OracleConfig {
  int ksg_k = 5;
  int plugin_bins = 32;
  // Reports subsample to this many rows before running the O(n^2) KSG search.
  Index max_samples = 5000;
  std::uint64_t seed = 0;

  void validate() const {
    if (ksg_k < 1) throw std::invalid_argument("OracleConfig: ksg_k must be >= 1");
    if (plugin_bins < 2) throw std::invalid_argument("OracleConfig: plugin_bins must be >= 2");
    if (max_samples < 2) throw std::invalid_argument("OracleConfig: max_samples must be >= 2");
  }
};

}  // namespace infosub::mi
