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

// Central finite-difference gradient oracle for MLPs. Test-only: it only uses
// predict(), never backward().

#include <algorithm>
#include <cmath>

#include "infosub/numerics/mlp.hpp"

namespace infosub::testing {

// Scalar probe loss: sum(output .* probe).
inline double probe_loss(const MlpModel& model, const Matrix& input, const Matrix& probe) {
  return (predict(model, input).array() * probe.array()).sum();
}

inline double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / denom;
}

struct FdReport {
  double max_param_error = 0.0;
  double max_input_error = 0.0;
};

inline FdReport finite_difference_check(const MlpModel& model, const Matrix& input, const Matrix& probe,
                                        const GradientSet& grads, const Matrix& input_grad, double eps = 1e-5) {
  FdReport rep;
  MlpModel m = model;
  auto central = [&](double& slot) {
    const double saved = slot;
    slot = saved + eps;
    const double up = probe_loss(m, input, probe);
    slot = saved - eps;
    const double down = probe_loss(m, input, probe);
    slot = saved;
    return (up - down) / (2.0 * eps);
  };
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    for (Index i = 0; i < m.weights[l].size(); ++i) {
      const double fd = central(m.weights[l].data()[i]);
      rep.max_param_error = std::max(rep.max_param_error, relative_error(grads.weights[l].data()[i], fd));
    }
    for (Index i = 0; i < m.biases[l].size(); ++i) {
      const double fd = central(m.biases[l].data()[i]);
      rep.max_param_error = std::max(rep.max_param_error, relative_error(grads.biases[l].data()[i], fd));
    }
  }
  Matrix x = input;
  for (Index i = 0; i < x.size(); ++i) {
    const double saved = x.data()[i];
    x.data()[i] = saved + eps;
    const double up = probe_loss(m, x, probe);
    x.data()[i] = saved - eps;
    const double down = probe_loss(m, x, probe);
    x.data()[i] = saved;
    rep.max_input_error = std::max(rep.max_input_error, relative_error(input_grad.data()[i], (up - down) / (2 * eps)));
  }
  return rep;
}

}  // namespace infosub::testing
