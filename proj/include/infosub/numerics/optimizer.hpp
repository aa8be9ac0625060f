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
#include <optional>
#include <stdexcept>
#include <string>

#include "infosub/numerics/mlp.hpp"

namespace infosub {

enum class OptimizerKind { sgd, adam };

inline const char* to_string(OptimizerKind k) { return k == OptimizerKind::sgd ? "sgd" : "adam"; }

inline OptimizerKind optimizer_from_string(const std::string& s) {
  if (s == "sgd") return OptimizerKind::sgd;
  if (s == "adam") return OptimizerKind::adam;
  throw std::invalid_argument("unknown optimizer '" + s + "' (expected sgd or adam)");
}

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::adam;
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::optional<double> clip_norm;
  std::uint64_t step = 0;
  // Adam moments, lazily shaped on the first step.
  GradientSet first_moment;
  GradientSet second_moment;

  static OptimizerState make(OptimizerKind kind, double lr, std::optional<double> clip = std::nullopt) {
    if (!(lr >= 0.0)) throw std::invalid_argument("OptimizerState: learning rate must be >= 0");
    if (clip && !(*clip > 0.0)) throw std::invalid_argument("OptimizerState: clip_norm must be > 0");
    OptimizerState s;
    s.kind = kind;
    s.learning_rate = lr;
    s.clip_norm = clip;
    return s;
  }
};

// Rescales the whole gradient set so its global L2 norm is at most max_norm.
// Returns the norm before clipping.
inline double clip_global_norm(GradientSet& grads, double max_norm) {
  const double norm = std::sqrt(grads.squared_norm());
  if (norm > max_norm && norm > 0.0) grads.scale(max_norm / norm);
  return norm;
}

inline void optimizer_step(MlpModel& model, GradientSet grads, OptimizerState& state) {
  if (!grads.congruent_with(model)) throw ShapeError("optimizer_step: gradient/model shape mismatch");
  if (!grads.all_finite()) throw NumericalError("optimizer_step: non-finite gradients");
  if (state.clip_norm) clip_global_norm(grads, *state.clip_norm);
  ++state.step;
  const double lr = state.learning_rate;
  if (state.kind == OptimizerKind::sgd) {
    for (std::size_t i = 0; i < model.num_layers(); ++i) {
      model.weights[i] -= lr * grads.weights[i];
      model.biases[i] -= lr * grads.biases[i];
    }
  } else {
    if (!state.first_moment.congruent_with(model)) {
      state.first_moment = GradientSet::zeros_like(model);
      state.second_moment = GradientSet::zeros_like(model);
    }
    const double b1 = state.beta1, b2 = state.beta2, eps = state.epsilon;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
      m = b1 * m + (1.0 - b1) * g;
      v = (b2 * v.array() + (1.0 - b2) * g.array().square()).matrix();
      param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    };
    for (std::size_t i = 0; i < model.num_layers(); ++i) {
      update(model.weights[i], state.first_moment.weights[i], state.second_moment.weights[i], grads.weights[i]);
      update(model.biases[i], state.first_moment.biases[i], state.second_moment.biases[i], grads.biases[i]);
    }
  }
  ++model.version;
}

}  // namespace infosub
