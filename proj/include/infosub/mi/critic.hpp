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

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "infosub/numerics/mlp.hpp"

namespace infosub::mi {

struct InputBlock {
  std::string name;
  Index dim = 0;
};

// Statistics network T(a, b) for a DV-style bound on I(A; B). The input is
// the concatenation of `blocks`; blocks [0, split) form variable A, the rest
// variable B. Output is a single score per row.
struct Critic {
  MlpModel model;
  std::vector<InputBlock> blocks;
  std::size_t split = 1;

  static Critic make(std::vector<InputBlock> blocks, std::size_t split, std::span<const Index> hidden,
                     Activation activation, RngSeed seed) {
    if (blocks.size() < 2 || split == 0 || split >= blocks.size()) {
      throw std::invalid_argument("Critic: need blocks on both sides of the split");
    }
    Critic c;
    c.blocks = std::move(blocks);
    c.split = split;
    const auto dims = layer_layout(c.input_dim(), hidden, 1);
    c.model = init_mlp(dims, activation, seed);
    return c;
  }

  Index input_dim() const {
    return std::accumulate(blocks.begin(), blocks.end(), Index{0},
                           [](Index acc, const InputBlock& b) { return acc + b.dim; });
  }
  Index first_dim() const {
    Index d = 0;
    for (std::size_t i = 0; i < split; ++i) d += blocks[i].dim;
    return d;
  }
  Index second_dim() const { return input_dim() - first_dim(); }

  // Column offset of a named block within the concatenated input.
  Index offset_of(const std::string& name) const {
    Index at = 0;
    for (const auto& b : blocks) {
      if (b.name == name) return at;
      at += b.dim;
    }
    throw std::invalid_argument("Critic: no block named '" + name + "'");
  }
};

// Row-aligned samples of the two critic arguments. For the joint batch the
// rows are genuine pairs; for the marginal batch the pairing is broken.
struct PairedBatch {
  Matrix first;
  Matrix second;

  Index rows() const { return first.rows(); }
};

}  // namespace infosub::mi
