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

// Four-species food web (wolves W, sheep S, rabbits R, grass G) sampled with
// the discrete update
//   W' = W + W(-a0 + a1 S + a2 R) / dt
//   S' = S + S( b0 - b1 W + b2 G) / dt
//   R' = R + R( c0 - c1 W + c2 G) / dt
//   G' = G + G( d0 - d1 S - d2 R) / dt

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "infosub/data/dataset.hpp"

namespace infosub::data {

struct LvParams {
  double w0 = 9.0, s0 = 10.0, r0 = 10.0, g0 = 100.0;
  std::array<double, 3> a{9.0, 0.3, 0.1};
  std::array<double, 3> b{2.0, 0.2, 0.6};
  std::array<double, 3> c{3.0, 0.2, 0.8};
  std::array<double, 3> d{23.0, 0.6, 0.3};
  double delta_t = 800.0;
  // Number of samples emitted, including the initial state.
  Index steps = 1500;

  void validate() const {
    if (!(w0 > 0 && s0 > 0 && r0 > 0 && g0 > 0)) throw std::invalid_argument("LvParams: initial populations must be > 0");
    if (!(delta_t > 0)) throw std::invalid_argument("LvParams: delta_t must be > 0");
    if (steps < 1) throw std::invalid_argument("LvParams: steps must be >= 1");
  }
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, Index step) : std::runtime_error(what), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_;
};

struct LvState {
  double w, s, r, g;
};

inline LvState lotka_volterra_step(const LvState& x, const LvParams& p) {
  const double k = 1.0 / p.delta_t;
  return LvState{
      x.w + k * x.w * (-p.a[0] + p.a[1] * x.s + p.a[2] * x.r),
      x.s + k * x.s * (p.b[0] - p.b[1] * x.w + p.b[2] * x.g),
      x.r + k * x.r * (p.c[0] - p.c[1] * x.w + p.c[2] * x.g),
      x.g + k * x.g * (p.d[0] - p.d[1] * x.s - p.d[2] * x.r),
  };
}

// Columns W, S, R, G and t (the sample index). Throws SimulationError if a
// population stops being finite and positive.
inline Dataset simulate_lotka_volterra(const LvParams& params) {
  params.validate();
  Matrix values(params.steps, 5);
  LvState x{params.w0, params.s0, params.r0, params.g0};
  for (Index k = 0; k < params.steps; ++k) {
    if (k > 0) x = lotka_volterra_step(x, params);
    for (double v : {x.w, x.s, x.r, x.g}) {
      if (!std::isfinite(v)) throw SimulationError("Lotka-Volterra diverged at step " + std::to_string(k), k);
      if (v <= 0.0) throw SimulationError("Lotka-Volterra population extinct at step " + std::to_string(k), k);
    }
    values.row(k) << x.w, x.s, x.r, x.g, static_cast<double>(k);
  }
  return numeric_dataset({{"W", Role::feature}, {"S", Role::feature}, {"R", Role::feature}, {"G", Role::feature},
                          {"t", Role::ignore}},
                         values);
}

}  // namespace infosub::data
