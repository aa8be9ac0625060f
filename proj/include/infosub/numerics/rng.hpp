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
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "infosub/numerics/matrix.hpp"

namespace infosub {

struct RngSeed {
  std::uint64_t value = 0;
};

// Thin wrapper over mt19937_64. Identical seed plus identical call sequence
// yields an identical stream.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  std::vector<Index> permutation(Index n) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Index{0});
    std::shuffle(p.begin(), p.end(), engine_);
    return p;
  }

  // k distinct indices from [0, n), via a partial Fisher-Yates shuffle.
  std::vector<Index> sample_without_replacement(Index n, Index k) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Index{0});
    k = std::min(k, n);
    for (Index i = 0; i < k; ++i) {
      const Index j = i + static_cast<Index>(below(static_cast<std::size_t>(n - i)));
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    p.resize(static_cast<std::size_t>(k));
    return p;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Child seeds for independent sub-streams (networks, batches, shuffles).
inline RngSeed derive_seed(RngSeed base, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base.value), static_cast<std::uint32_t>(base.value >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return RngSeed{(static_cast<std::uint64_t>(out[0]) << 32) | out[1]};
}

}  // namespace infosub
