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

#include <ostream>
#include <stdexcept>
#include <vector>

#include "infosub/mi/oracle.hpp"
#include "infosub/subtraction/trainer.hpp"

namespace infosub::eval {

// One information-plane point. The KSG columns are the reported values; the
// critic columns are the final-epoch neural estimates for reference.
struct SweepPoint {
  double lambda = 0.0;
  double i_full_bits = 0.0;  // I(Y; X, Z)
  double i_leak_bits = 0.0;  // I(X; Z)
  double critic_full_bits = 0.0;
  double critic_leak_bits = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<subtraction::TrainedSubtractor> runs;

  // Indices i where the leak rises by more than `slack` bits from point i-1
  // to point i.
  std::vector<std::size_t> leak_increases(double slack) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].i_leak_bits > points[i - 1].i_leak_bits + slack) out.push_back(i);
    }
    return out;
  }

  void write_csv(std::ostream& os) const {
    os << "lambda,i_full_bits,i_leak_bits,critic_full_bits,critic_leak_bits\n";
    os.precision(17);
    for (const auto& p : points) {
      os << p.lambda << ',' << p.i_full_bits << ',' << p.i_leak_bits << ',' << p.critic_full_bits << ','
         << p.critic_leak_bits << '\n';
    }
  }
};

// A full subtraction run per lambda; point i is seeded with
// derive_seed(base.seed, i).
inline SweepResult lambda_sweep(const subtraction::SubtractionConfig& base, const std::vector<double>& lambdas,
                                const Matrix& x, const Matrix& y, const mi::OracleConfig& oracle_cfg,
                                const subtraction::EpochCallback& on_epoch = {}) {
  if (lambdas.size() < 2) throw std::invalid_argument("lambda_sweep: need at least 2 lambdas");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("lambda_sweep: lambdas must be strictly increasing");
  }
  const mi::Oracle oracle(y.rows(), oracle_cfg);
  SweepResult out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    auto cfg = base;
    cfg.lambda = lambdas[i];
    cfg.seed = derive_seed(base.seed, i);
    auto run = subtraction::train_information_subtraction(cfg, x, y, on_epoch);
    const Matrix z = subtraction::generate_representation(run, y);
    const Matrix xz = hconcat({&x, &z});
    SweepPoint p;
    p.lambda = lambdas[i];
    p.i_full_bits = oracle.mi_bits(y, xz);
    p.i_leak_bits = oracle.mi_bits(x, z);
    p.critic_full_bits = mi::nats_to_bits(run.trace.records.back().mi_full_nats);
    p.critic_leak_bits = mi::nats_to_bits(run.trace.records.back().mi_leak_nats);
    out.points.push_back(p);
    out.runs.push_back(std::move(run));
  }
  return out;
}

}  // namespace infosub::eval
