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

// Exact KL / mutual information of small discrete joints by enumeration, and
// a hand-built critic that outputs log p(a,b) / (p(a) p(b)) on one-hot inputs.

#include <cmath>
#include <vector>

#include "infosub/mi/critic.hpp"

namespace infosub::testing {

struct DiscreteJoint {
  // table[a][b] = P(A = a, B = b)
  std::vector<std::vector<double>> table;

  std::size_t size_a() const { return table.size(); }
  std::size_t size_b() const { return table.front().size(); }
  double pa(std::size_t a) const {
    double s = 0;
    for (double v : table[a]) s += v;
    return s;
  }
  double pb(std::size_t b) const {
    double s = 0;
    for (const auto& row : table) s += row[b];
    return s;
  }
  // KL(P_AB || P_A x P_B) in nats, by brute-force enumeration.
  double exact_mi() const {
    double kl = 0;
    for (std::size_t a = 0; a < size_a(); ++a) {
      for (std::size_t b = 0; b < size_b(); ++b) {
        const double p = table[a][b];
        if (p > 0) kl += p * std::log(p / (pa(a) * pb(b)));
      }
    }
    return kl;
  }
};

// Hidden unit (a, b) fires iff both one-hot inputs match; its output weight is
// the log density ratio of that cell.
inline mi::Critic optimal_discrete_critic(const DiscreteJoint& j) {
  const auto na = static_cast<Index>(j.size_a()), nb = static_cast<Index>(j.size_b());
  mi::Critic c;
  c.blocks = {{"a", na}, {"b", nb}};
  c.split = 1;
  c.model = init_mlp({na + nb, na * nb, 1}, Activation::relu, RngSeed{0});
  c.model.weights[0].setZero();
  c.model.biases[0].setConstant(-1.0);
  for (Index a = 0; a < na; ++a) {
    for (Index b = 0; b < nb; ++b) {
      const Index unit = a * nb + b;
      c.model.weights[0](a, unit) = 1.0;
      c.model.weights[0](na + b, unit) = 1.0;
      const double p = j.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      c.model.weights[1](unit, 0) = std::log(p / (j.pa(static_cast<std::size_t>(a)) * j.pb(static_cast<std::size_t>(b))));
    }
  }
  c.model.biases[1].setZero();
  return c;
}

struct EnumeratedBatches {
  mi::PairedBatch joint;
  std::vector<double> joint_weights;
  mi::PairedBatch marginal;
  std::vector<double> marginal_weights;
};

// Every (a, b) cell once, weighted by P(a,b) for the joint expectation and by
// P(a)P(b) for the product-of-marginals expectation.
inline EnumeratedBatches enumerate_support(const DiscreteJoint& j) {
  const auto na = static_cast<Index>(j.size_a()), nb = static_cast<Index>(j.size_b());
  EnumeratedBatches e;
  e.joint.first = Matrix::Zero(na * nb, na);
  e.joint.second = Matrix::Zero(na * nb, nb);
  for (Index a = 0; a < na; ++a) {
    for (Index b = 0; b < nb; ++b) {
      const Index r = a * nb + b;
      e.joint.first(r, a) = 1.0;
      e.joint.second(r, b) = 1.0;
      e.joint_weights.push_back(j.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      e.marginal_weights.push_back(j.pa(static_cast<std::size_t>(a)) * j.pb(static_cast<std::size_t>(b)));
    }
  }
  e.marginal = e.joint;
  return e;
}

}  // namespace infosub::testing
