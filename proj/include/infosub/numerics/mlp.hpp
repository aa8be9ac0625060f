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
#include <span>
#include <string>
#include <vector>

#include "infosub/numerics/matrix.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub {

enum class Activation { relu, tanh };
enum class OutputActivation { linear };

inline const char* to_string(Activation a) { return a == Activation::relu ? "relu" : "tanh"; }

inline Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::relu;
  if (s == "tanh") return Activation::tanh;
  throw std::invalid_argument("unknown activation '" + s + "' (expected relu or tanh)");
}

// Feedforward network. weights[i] maps layer_dims[i] -> layer_dims[i + 1];
// the hidden activation is applied after every layer except the last.
struct MlpModel {
  std::vector<Index> layer_dims;
  std::vector<Matrix> weights;
  std::vector<RowVector> biases;
  Activation hidden_activation = Activation::relu;
  OutputActivation output_activation = OutputActivation::linear;
  // Bumped by every parameter update so backward() can reject stale caches.
  std::uint64_t version = 0;

  Index input_dim() const { return layer_dims.front(); }
  Index output_dim() const { return layer_dims.back(); }
  std::size_t num_layers() const { return weights.size(); }

  Index parameter_count() const {
    Index n = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) n += weights[i].size() + biases[i].size();
    return n;
  }
};

struct GradientSet {
  std::vector<Matrix> weights;
  std::vector<RowVector> biases;

  static GradientSet zeros_like(const MlpModel& model) {
    GradientSet g;
    for (std::size_t i = 0; i < model.num_layers(); ++i) {
      g.weights.push_back(Matrix::Zero(model.weights[i].rows(), model.weights[i].cols()));
      g.biases.push_back(RowVector::Zero(model.biases[i].size()));
    }
    return g;
  }

  double squared_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      s += weights[i].squaredNorm() + biases[i].squaredNorm();
    }
    return s;
  }

  bool all_finite() const {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!weights[i].allFinite() || !biases[i].allFinite()) return false;
    }
    return true;
  }

  void scale(double factor) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] *= factor;
      biases[i] *= factor;
    }
  }

  GradientSet& operator+=(const GradientSet& other) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] += other.weights[i];
      biases[i] += other.biases[i];
    }
    return *this;
  }

  bool congruent_with(const MlpModel& model) const {
    if (weights.size() != model.num_layers() || biases.size() != model.num_layers()) return false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i].rows() != model.weights[i].rows() || weights[i].cols() != model.weights[i].cols() ||
          biases[i].size() != model.biases[i].size()) {
        return false;
      }
    }
    return true;
  }
};

// Everything backward() needs: the input to every layer and the hidden
// pre-activations.
struct ForwardCache {
  std::vector<Matrix> layer_inputs;
  std::vector<Matrix> pre_activations;
  std::uint64_t model_version = 0;
};

struct ForwardResult {
  Matrix output;
  ForwardCache cache;
};

struct BackwardResult {
  GradientSet grads;
  Matrix input_grad;
};

// Glorot-uniform weights, zero biases.
inline MlpModel init_mlp(std::span<const Index> dims, Activation activation, RngSeed seed) {
  if (dims.empty()) throw std::invalid_argument("init_mlp: empty layer dimension list");
  if (dims.size() < 2) throw std::invalid_argument("init_mlp: need at least input and output dims");
  for (Index d : dims) {
    if (d < 1) throw std::invalid_argument("init_mlp: layer dims must be >= 1");
  }
  Rng rng(seed);
  MlpModel m;
  m.layer_dims.assign(dims.begin(), dims.end());
  m.hidden_activation = activation;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    const Index fan_in = dims[i], fan_out = dims[i + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_in, fan_out);
    for (Index r = 0; r < fan_in; ++r) {
      for (Index c = 0; c < fan_out; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    m.weights.push_back(std::move(w));
    m.biases.push_back(RowVector::Zero(fan_out));
  }
  return m;
}

inline MlpModel init_mlp(std::initializer_list<Index> dims, Activation activation, RngSeed seed) {
  return init_mlp(std::span<const Index>(dims.begin(), dims.size()), activation, seed);
}

// Layout helper: input, hidden..., output.
inline std::vector<Index> layer_layout(Index input, std::span<const Index> hidden, Index output) {
  std::vector<Index> dims{input};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(output);
  return dims;
}

namespace detail {

inline void activate_inplace(Matrix& m, Activation a) {
  if (a == Activation::relu) {
    m = m.cwiseMax(0.0);
  } else {
    m = m.array().tanh().matrix();
  }
}

// Multiplies `grad` in place by the activation derivative at `pre`.
inline void activation_backward_inplace(Matrix& grad, const Matrix& pre, Activation a) {
  if (a == Activation::relu) {
    grad = (pre.array() > 0.0).select(grad, 0.0);
  } else {
    grad = (grad.array() * (1.0 - pre.array().tanh().square())).matrix();
  }
}

inline void check_input(const MlpModel& model, const Matrix& input) {
  if (model.weights.empty()) throw ShapeError("forward: model has no layers");
  if (input.cols() != model.input_dim()) {
    throw ShapeError("forward: input has " + std::to_string(input.cols()) + " columns, model expects " +
                     std::to_string(model.input_dim()));
  }
}

}  // namespace detail

inline ForwardResult forward(const MlpModel& model, const Matrix& input) {
  detail::check_input(model, input);
  ForwardResult res;
  res.cache.model_version = model.version;
  Matrix h = input;
  const std::size_t last = model.num_layers() - 1;
  for (std::size_t i = 0; i < model.num_layers(); ++i) {
    res.cache.layer_inputs.push_back(h);
    Matrix pre(h.rows(), model.weights[i].cols());
    pre.noalias() = h * model.weights[i];
    pre.rowwise() += model.biases[i];
    if (i == last) {
      h = std::move(pre);
    } else {
      res.cache.pre_activations.push_back(pre);
      detail::activate_inplace(pre, model.hidden_activation);
      h = std::move(pre);
    }
  }
  res.output = std::move(h);
  return res;
}

// Forward pass without keeping the cache.
inline Matrix predict(const MlpModel& model, const Matrix& input) {
  detail::check_input(model, input);
  Matrix h = input;
  const std::size_t last = model.num_layers() - 1;
  for (std::size_t i = 0; i < model.num_layers(); ++i) {
    Matrix pre(h.rows(), model.weights[i].cols());
    pre.noalias() = h * model.weights[i];
    pre.rowwise() += model.biases[i];
    if (i != last) detail::activate_inplace(pre, model.hidden_activation);
    h = std::move(pre);
  }
  return h;
}

// Reverse-mode pass for a scalar loss whose gradient w.r.t. the network output
// is `output_grad`. Also returns the gradient w.r.t. the network input.
inline BackwardResult backward(const MlpModel& model, const ForwardCache& cache, const Matrix& output_grad) {
  if (cache.model_version != model.version || cache.layer_inputs.size() != model.num_layers()) {
    throw std::logic_error("backward: stale forward cache (model updated since forward)");
  }
  const Index rows = cache.layer_inputs.front().rows();
  if (output_grad.rows() != rows || output_grad.cols() != model.output_dim()) {
    throw ShapeError("backward: output_grad is " + shape_string(output_grad) + ", expected " +
                     std::to_string(rows) + "x" + std::to_string(model.output_dim()));
  }
  BackwardResult res;
  res.grads = GradientSet::zeros_like(model);
  Matrix delta = output_grad;
  for (std::size_t k = model.num_layers(); k-- > 0;) {
    if (k + 1 < model.num_layers()) {
      detail::activation_backward_inplace(delta, cache.pre_activations[k], model.hidden_activation);
    }
    res.grads.weights[k].noalias() = cache.layer_inputs[k].transpose() * delta;
    res.grads.biases[k] = delta.colwise().sum();
    Matrix next(delta.rows(), model.weights[k].rows());
    next.noalias() = delta * model.weights[k].transpose();
    delta = std::move(next);
  }
  res.input_grad = std::move(delta);
  return res;
}

}  // namespace infosub
