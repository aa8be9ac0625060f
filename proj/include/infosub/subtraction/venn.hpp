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

#include <array>
#include <string>
#include <vector>

#include "infosub/mi/oracle.hpp"
#include "infosub/subtraction/trainer.hpp"

namespace infosub::subtraction {

// One sector representation: the run that produced it, its samples, and the
// three report cells. conditional_bits is computed as
// joint_bits - base_bits, with joint_bits = I(Zi, cond; G).
struct VennSector {
  std::string name;
  std::vector<std::string> condition;
  TrainedSubtractor run;
  Matrix z;
  double conditional_bits = 0.0;  // I(Zi; G | cond)
  double leak_bits = 0.0;         // I(Zi; cond)
  double base_bits = 0.0;         // I(G; cond)
  double joint_bits = 0.0;        // I(Zi, cond; G)
};

struct VennDecomposition {
  std::array<std::string, 3> names;  // target first, then the two others
  std::array<double, 3> entropy_bits{};
  // I(G;S), I(S;W), I(W;G) in the order of `names`.
  std::array<double, 3> pair_mi_bits{};
  std::vector<VennSector> sectors;
};

// Z1 <- (G | S, W); Z4 <- (G | W, Z1); Z5 <- (G | S, Z1); Z7 <- (G | Z1, Z4, Z5).
// Each run gets its own seed derived from config.seed.
inline VennDecomposition venn_decompose(const Matrix& g, const Matrix& s, const Matrix& w,
                                        const SubtractionConfig& config, const mi::OracleConfig& oracle_cfg,
                                        const std::array<std::string, 3>& names = {"G", "S", "W"},
                                        const EpochCallback& on_epoch = {}) {
  if (g.rows() != s.rows() || g.rows() != w.rows()) throw ShapeError("venn_decompose: variables are not row-aligned");
  const mi::Oracle oracle(g.rows(), oracle_cfg);
  VennDecomposition out;
  out.names = names;
  out.entropy_bits = {oracle.entropy_bits(g), oracle.entropy_bits(s), oracle.entropy_bits(w)};
  out.pair_mi_bits = {oracle.mi_bits(g, s), oracle.mi_bits(s, w), oracle.mi_bits(w, g)};

  const auto run = [&](std::string name, std::vector<std::string> cond_names, const Matrix& cond, std::uint64_t stream) {
    auto cfg = config;
    cfg.seed = derive_seed(config.seed, stream);
    VennSector sec;
    sec.name = std::move(name);
    sec.condition = std::move(cond_names);
    sec.run = train_information_subtraction(cfg, cond, g, on_epoch);
    sec.z = generate_representation(sec.run, g);
    const Matrix zc = hconcat({&sec.z, &cond});
    sec.base_bits = oracle.mi_bits(g, cond);
    sec.joint_bits = oracle.mi_bits(zc, g);
    sec.conditional_bits = sec.joint_bits - sec.base_bits;
    sec.leak_bits = oracle.mi_bits(sec.z, cond);
    out.sectors.push_back(std::move(sec));
    return out.sectors.back().z;
  };
  const Matrix z1 = run("Z1", {names[1], names[2]}, hconcat({&s, &w}), 1);
  const Matrix z4 = run("Z4", {names[2], "Z1"}, hconcat({&w, &z1}), 4);
  const Matrix z5 = run("Z5", {names[1], "Z1"}, hconcat({&s, &z1}), 5);
  run("Z7", {"Z1", "Z4", "Z5"}, hconcat({&z1, &z4, &z5}), 7);
  return out;
}

}  // namespace infosub::subtraction
