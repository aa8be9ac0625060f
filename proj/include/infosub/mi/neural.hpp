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

// Donsker-Varadhan and SMILE lower bounds on mutual information, computed
// from a trained critic:
//   DV    = E_joint[T] - log E_marginal[e^T]
//   SMILE = E_joint[T] - log E_marginal[clamp(e^T, e^-tau, e^tau)]
// The marginal batch pairs each first-argument row with a second-argument row
// drawn by an in-batch shuffle.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "infosub/mi/critic.hpp"
#include "infosub/mi/estimate.hpp"
#include "infosub/numerics/optimizer.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::mi {

inline constexpr double kDefaultTau = 5.0;
inline constexpr double kNoClip = std::numeric_limits<double>::infinity();

inline std::vector<Index> shuffle_permutation(Index n, RngSeed seed) {
  Rng rng(seed);
  return rng.permutation(n);
}

// Returns batch_b with its rows permuted so the pairing with batch_a is broken.
inline Matrix shuffle_marginal(const Matrix& batch_a, const Matrix& batch_b, RngSeed seed) {
  if (batch_a.rows() != batch_b.rows()) {
    throw ShapeError("shuffle_marginal: row counts differ (" + std::to_string(batch_a.rows()) + " vs " +
                     std::to_string(batch_b.rows()) + ")");
  }
  const auto perm = shuffle_permutation(batch_b.rows(), seed);
  return select_rows(batch_b, perm);
}

// Value of the (optionally clamped) DV objective together with its gradient
// w.r.t. every critic score. Weights, when given, replace the uniform 1/n
// averages so expectations can be taken exactly over an enumerated support.
struct ScoreObjective {
  double value = 0.0;
  Vector d_joint;
  Vector d_marginal;
};

inline ScoreObjective smile_objective(std::span<const double> joint, std::span<const double> marginal, double tau,
                                      std::span<const double> joint_weights = {},
                                      std::span<const double> marginal_weights = {}) {
  if (joint.empty() || marginal.empty()) throw std::invalid_argument("DV estimate: empty batch");
  if (!(tau > 0.0)) throw std::invalid_argument("SMILE estimate: tau must be > 0");
  if (!joint_weights.empty() && joint_weights.size() != joint.size()) {
    throw ShapeError("DV estimate: joint weights do not match scores");
  }
  if (!marginal_weights.empty() && marginal_weights.size() != marginal.size()) {
    throw ShapeError("DV estimate: marginal weights do not match scores");
  }
  auto weight = [](std::span<const double> w, std::size_t i, std::size_t n, double total) {
    return w.empty() ? 1.0 / static_cast<double>(n) : w[i] / total;
  };
  const double jw_total = joint_weights.empty() ? 1.0 : std::accumulate(joint_weights.begin(), joint_weights.end(), 0.0);
  const double mw_total =
      marginal_weights.empty() ? 1.0 : std::accumulate(marginal_weights.begin(), marginal_weights.end(), 0.0);

  ScoreObjective out;
  out.d_joint.resize(static_cast<Index>(joint.size()));
  out.d_marginal.resize(static_cast<Index>(marginal.size()));

  double joint_mean = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (!std::isfinite(joint[i])) throw NumericalError("DV estimate: non-finite critic output");
    const double w = weight(joint_weights, i, joint.size(), jw_total);
    joint_mean += w * joint[i];
    out.d_joint(static_cast<Index>(i)) = w;
  }

  std::vector<double> clamped(marginal.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    if (!std::isfinite(marginal[i])) throw NumericalError("DV estimate: non-finite critic output");
    clamped[i] = std::clamp(marginal[i], -tau, tau);
    peak = std::max(peak, clamped[i]);
  }
  double partition = 0.0;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    const double e = weight(marginal_weights, i, marginal.size(), mw_total) * std::exp(clamped[i] - peak);
    out.d_marginal(static_cast<Index>(i)) = e;
    partition += e;
  }
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    const bool active = marginal[i] > -tau && marginal[i] < tau;
    out.d_marginal(static_cast<Index>(i)) = active ? -out.d_marginal(static_cast<Index>(i)) / partition : 0.0;
  }
  out.value = joint_mean - (peak + std::log(partition));
  return out;
}

inline Matrix critic_input(const Critic& critic, const PairedBatch& batch) {
  if (batch.first.cols() != critic.first_dim() || batch.second.cols() != critic.second_dim()) {
    throw ShapeError("critic: batch blocks are " + shape_string(batch.first) + " and " + shape_string(batch.second) +
                     ", critic expects " + std::to_string(critic.first_dim()) + " and " +
                     std::to_string(critic.second_dim()) + " columns");
  }
  return hconcat({&batch.first, &batch.second});
}

inline std::vector<double> critic_scores(const Critic& critic, const PairedBatch& batch) {
  const Matrix out = predict(critic.model, critic_input(critic, batch));
  return std::vector<double>(out.data(), out.data() + out.size());
}

inline MiEstimate smile_estimate(const Critic& critic, const PairedBatch& joint, const PairedBatch& marginal,
                                 double tau) {
  const auto tj = critic_scores(critic, joint);
  const auto tm = critic_scores(critic, marginal);
  const auto obj = smile_objective(tj, tm, tau);
  return MiEstimate::from_nats(obj.value, joint.rows(), std::isinf(tau) ? Estimator::dv : Estimator::smile);
}

inline MiEstimate dv_estimate(const Critic& critic, const PairedBatch& joint, const PairedBatch& marginal) {
  return smile_estimate(critic, joint, marginal, kNoClip);
}

// DV value with the two expectations taken under explicit weights (e.g. the
// exact joint and product-of-marginals probabilities of a discrete support).
inline MiEstimate dv_estimate_weighted(const Critic& critic, const PairedBatch& joint,
                                       std::span<const double> joint_weights, const PairedBatch& marginal,
                                       std::span<const double> marginal_weights) {
  const auto tj = critic_scores(critic, joint);
  const auto tm = critic_scores(critic, marginal);
  const auto obj = smile_objective(tj, tm, kNoClip, joint_weights, marginal_weights);
  return MiEstimate::from_nats(obj.value, joint.rows(), Estimator::dv);
}

// Gradient source for critic updates. Ascending the clamped DV value directly
// is unstable: once marginal scores pass tau their gradient vanishes and the
// joint term keeps rising without bound. `js` follows the reference SMILE
// recipe and ascends the Jensen-Shannon bound while reporting the SMILE value.
enum class CriticGradient { js, direct };

inline ScoreObjective js_objective(std::span<const double> joint, std::span<const double> marginal) {
  if (joint.empty() || marginal.empty()) throw std::invalid_argument("js_objective: empty batch");
  const auto softplus = [](double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); };
  const auto sigmoid = [](double t) { return 1.0 / (1.0 + std::exp(-t)); };
  const double nj = static_cast<double>(joint.size()), nm = static_cast<double>(marginal.size());
  ScoreObjective out{0.0, Vector(static_cast<Index>(joint.size())), Vector(static_cast<Index>(marginal.size()))};
  for (std::size_t i = 0; i < joint.size(); ++i) {
    out.value -= softplus(-joint[i]) / nj;
    out.d_joint(static_cast<Index>(i)) = sigmoid(-joint[i]) / nj;
  }
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    out.value -= softplus(marginal[i]) / nm;
    out.d_marginal(static_cast<Index>(i)) = -sigmoid(marginal[i]) / nm;
  }
  return out;
}

// One optimizer step on the critic. Returns the clamped DV estimate
// re-evaluated with the updated parameters.
inline double critic_train_step(Critic& critic, const PairedBatch& joint, const PairedBatch& marginal,
                                OptimizerState& opt, double tau, CriticGradient mode = CriticGradient::js) {
  const Matrix in_joint = critic_input(critic, joint);
  const Matrix in_marg = critic_input(critic, marginal);
  Matrix stacked(in_joint.rows() + in_marg.rows(), in_joint.cols());
  stacked.topRows(in_joint.rows()) = in_joint;
  stacked.bottomRows(in_marg.rows()) = in_marg;

  auto fwd = forward(critic.model, stacked);
  const Index nj = in_joint.rows();
  std::span<const double> scores(fwd.output.data(), static_cast<std::size_t>(fwd.output.size()));
  const auto sj = scores.first(static_cast<std::size_t>(nj));
  const auto sm = scores.subspan(static_cast<std::size_t>(nj));
  const auto obj = mode == CriticGradient::js ? js_objective(sj, sm) : smile_objective(sj, sm, tau);
  require_finite(obj.value, "critic_train_step loss");

  Matrix out_grad(stacked.rows(), 1);
  out_grad.topRows(nj) = -obj.d_joint;
  out_grad.bottomRows(in_marg.rows()) = -obj.d_marginal;
  auto back = backward(critic.model, fwd.cache, out_grad);
  optimizer_step(critic.model, std::move(back.grads), opt);

  const Matrix after = predict(critic.model, stacked);
  std::span<const double> s2(after.data(), static_cast<std::size_t>(after.size()));
  const double value = smile_objective(s2.first(static_cast<std::size_t>(nj)), s2.subspan(static_cast<std::size_t>(nj)), tau).value;
  require_finite(value, "critic_train_step estimate");
  return value;
}

}  // namespace infosub::mi

namespace infosub::mi {

struct CriticFitOptions {
  int steps = 2000;
  Index batch_size = 256;
  double learning_rate = 5e-4;
  double tau = kDefaultTau;
  RngSeed seed{0};
};

// Trains `critic` on I(A;B) from row-aligned samples with minibatches and an
// in-batch shuffle of B for the marginal. Returns the per-step estimates.
inline std::vector<double> fit_critic(Critic& critic, const Matrix& a, const Matrix& b, const CriticFitOptions& opts) {
  if (a.rows() != b.rows()) throw ShapeError("fit_critic: row counts differ");
  auto opt = OptimizerState::make(OptimizerKind::adam, opts.learning_rate);
  Rng rng(opts.seed);
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(opts.steps));
  for (int s = 0; s < opts.steps; ++s) {
    const auto idx = rng.sample_without_replacement(a.rows(), opts.batch_size);
    PairedBatch joint{select_rows(a, idx), select_rows(b, idx)};
    PairedBatch marginal{joint.first, shuffle_marginal(joint.first, joint.second, RngSeed{rng.next()})};
    trace.push_back(critic_train_step(critic, joint, marginal, opt, opts.tau));
  }
  return trace;
}

// Estimate over a full sample, with one shuffled copy of B as the marginal.
inline MiEstimate evaluate_critic(const Critic& critic, const Matrix& a, const Matrix& b, double tau, RngSeed seed) {
  PairedBatch joint{a, b};
  PairedBatch marginal{a, shuffle_marginal(a, b, seed)};
  return smile_estimate(critic, joint, marginal, tau);
}

}  // namespace infosub::mi
