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

#include <vector>

#include "infosub/subtraction/predictor.hpp"
#include "infosub/subtraction/trainer.hpp"

namespace infosub::subtraction {

struct UnbiasedPredictor {
  TrainedSubtractor subtractor;
  Classifier predictor;
  Matrix z;  // representation of the training rows
};

// Two stages. First a subtraction run whose generator maps the biased
// features X to Z, with critics over (X | C, Z) and (C | Z), so that Z keeps
// what X carries beyond C. Then a classifier on Z for n4 iterations.
inline UnbiasedPredictor train_unbiased_predictor(const SubtractionConfig& config, const Matrix& x, const Matrix& c,
                                                  const std::vector<int>& y, int num_classes,
                                                  const ClassifierOptions& predictor_opts,
                                                  const EpochCallback& on_epoch = {}) {
  if (static_cast<Index>(y.size()) != x.rows()) throw ShapeError("train_unbiased_predictor: label count mismatch");
  UnbiasedPredictor out{train_information_subtraction(config, c, x, on_epoch), {}, {}};
  out.z = generate_representation(out.subtractor, x);
  out.predictor = train_classifier(out.z, y, num_classes, predictor_opts);
  return out;
}

inline ClassifierOptions predictor_options(const SubtractionConfig& config) {
  ClassifierOptions o;
  o.hidden = config.generator_dims;
  o.activation = config.activation;
  o.epochs = config.n4;
  o.batch_size = config.batch_size;
  o.learning_rate = config.lr_estimator;
  o.seed = derive_seed(config.seed, 17);
  return o;
}

}  // namespace infosub::subtraction
