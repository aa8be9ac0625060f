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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infosub/mi/neural.hpp"
#include "infosub/numerics/mlp.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::subtraction {

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::vector<std::string>& violations)
      : std::invalid_argument(join(violations)), violations_(violations) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid subtraction config:";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

// Epoch counts are batch iterations: one sampled minibatch per epoch.
struct SubtractionConfig {
  Index z_dim = 10;
  double lambda = 1.0;
  int n1 = 200;
  int n2 = 2000;
  int n3 = 2;
  int n4 = 500;
  Index batch_size = 256;
  double lr_generator = 1e-4;
  double lr_discriminator = 5e-4;
  double lr_estimator = 1e-4;
  std::vector<Index> generator_dims{128, 128};
  std::vector<Index> discriminator_dims{128, 128};
  Activation activation = Activation::relu;
  double tau = mi::kDefaultTau;
  std::optional<double> clip_norm;
  RngSeed seed{0};

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    if (z_dim < 1) v.push_back("z_dim must be >= 1");
    if (!(lambda >= 0.0)) v.push_back("lambda must be >= 0");
    if (n1 < 0) v.push_back("n1 must be >= 0");
    if (n1 >= n2) v.push_back("n1 must be < n2 (the pretraining stage must end before training does)");
    if (n3 < 0) v.push_back("n3 must be >= 0");
    if (n4 < 0) v.push_back("n4 must be >= 0");
    if (batch_size < 2) v.push_back("batch_size must be >= 2");
    for (auto [name, lr] : {std::pair{"lr_generator", lr_generator}, std::pair{"lr_discriminator", lr_discriminator},
                            std::pair{"lr_estimator", lr_estimator}}) {
      if (!(lr > 0.0)) v.push_back(std::string(name) + " must be > 0");
    }
    for (Index d : generator_dims) {
      if (d < 1) v.push_back("generator_dims entries must be >= 1");
    }
    for (Index d : discriminator_dims) {
      if (d < 1) v.push_back("discriminator_dims entries must be >= 1");
    }
    if (!(tau > 0.0)) v.push_back("tau must be > 0");
    if (clip_norm && !(*clip_norm > 0.0)) v.push_back("clip_norm must be > 0 when set");
    return v;
  }

  void validate() const {
    const auto v = violations();
    if (!v.empty()) throw ConfigError(v);
  }
};

}  // namespace infosub::subtraction
