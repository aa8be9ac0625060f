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
#include <vector>

#include "infosub/numerics/matrix.hpp"
#include "infosub/numerics/mlp.hpp"
#include "infosub/numerics/optimizer.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::subtraction {

struct ClassifierOptions {
  std::vector<Index> hidden{128, 128};
  Activation activation = Activation::relu;
  int epochs = 500;  // minibatch iterations
  Index batch_size = 256;
  double learning_rate = 1e-4;
  RngSeed seed{0};
};

// Logistic output (one logit) for two classes, softmax otherwise. Inputs are
// z-scored with training statistics.
struct Classifier {
  MlpModel model;
  Standardizer scaler;
  int num_classes = 2;
};

namespace detail {

inline void check_labels(const Matrix& features, const std::vector<int>& labels, int num_classes) {
  if (static_cast<Index>(labels.size()) != features.rows()) {
    throw ShapeError("classifier: " + std::to_string(features.rows()) + " feature rows but " +
                     std::to_string(labels.size()) + " labels");
  }
  if (num_classes < 2) throw std::invalid_argument("classifier: need at least 2 classes");
  for (int l : labels) {
    if (l < 0 || l >= num_classes) throw std::invalid_argument("classifier: label out of range");
  }
}

}  // namespace detail

inline Classifier train_classifier(const Matrix& features, const std::vector<int>& labels, int num_classes,
                                   const ClassifierOptions& opts) {
  detail::check_labels(features, labels, num_classes);
  if (features.rows() == 0) throw std::invalid_argument("classifier: empty training set");
  Classifier c;
  c.num_classes = num_classes;
  c.scaler = Standardizer::fit(features);
  const Index out = num_classes == 2 ? 1 : num_classes;
  c.model = init_mlp(layer_layout(features.cols(), opts.hidden, out), opts.activation, opts.seed);
  auto opt = OptimizerState::make(OptimizerKind::adam, opts.learning_rate);
  const Matrix xs = c.scaler.apply(features);
  Rng rng(derive_seed(opts.seed, 1));
  const Index batch = std::min(opts.batch_size, xs.rows());
  for (int e = 0; e < opts.epochs; ++e) {
    const auto idx = rng.sample_without_replacement(xs.rows(), batch);
    auto fwd = forward(c.model, select_rows(xs, idx));
    Matrix grad(batch, out);
    const double scale = 1.0 / static_cast<double>(batch);
    for (Index i = 0; i < batch; ++i) {
      const int y = labels[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      if (out == 1) {
        const double p = 1.0 / (1.0 + std::exp(-fwd.output(i, 0)));
        grad(i, 0) = (p - y) * scale;
      } else {
        const double peak = fwd.output.row(i).maxCoeff();
        const RowVector ex = (fwd.output.row(i).array() - peak).exp().matrix();
        grad.row(i) = ex / ex.sum() * scale;
        grad(i, y) -= scale;
      }
    }
    auto back = backward(c.model, fwd.cache, grad);
    optimizer_step(c.model, std::move(back.grads), opt);
  }
  return c;
}

inline std::vector<int> predict_labels(const Classifier& c, const Matrix& features) {
  const Matrix out = predict(c.model, c.scaler.apply(features));
  std::vector<int> labels(static_cast<std::size_t>(out.rows()));
  for (Index i = 0; i < out.rows(); ++i) {
    if (out.cols() == 1) {
      labels[static_cast<std::size_t>(i)] = out(i, 0) > 0.0 ? 1 : 0;
    } else {
      Index arg = 0;
      out.row(i).maxCoeff(&arg);
      labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    }
  }
  return labels;
}

inline double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) throw std::invalid_argument("accuracy: size mismatch or empty");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace infosub::subtraction
