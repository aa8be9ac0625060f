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

#include <functional>
#include <utility>
#include <vector>

#include "infosub/mi/critic.hpp"
#include "infosub/mi/neural.hpp"
#include "infosub/numerics/matrix.hpp"
#include "infosub/numerics/mlp.hpp"
#include "infosub/numerics/optimizer.hpp"
#include "infosub/numerics/rng.hpp"
#include "infosub/subtraction/config.hpp"
#include "infosub/subtraction/trace.hpp"

namespace infosub::subtraction {

// Networks and optimizer state of one run. The generator maps the target Y to
// Z. critic_full scores (Y | X, Z) for I(Y; X, Z); critic_leak scores (X | Z)
// for I(X; Z). Y and X are z-scored with statistics fixed at construction;
// Z is fed to the critics as produced.
struct Subtractor {
  SubtractionConfig config;
  MlpModel generator;
  MlpModel reconstructor;
  mi::Critic critic_full;
  mi::Critic critic_leak;
  Standardizer target_scaler;
  Standardizer condition_scaler;
  OptimizerState generator_opt;
  OptimizerState reconstructor_opt;
  OptimizerState full_opt;
  OptimizerState leak_opt;
  Rng rng{0};
  DiagnosticsTrace trace;

  Index target_dim() const { return generator.input_dim(); }
  Index condition_dim() const { return critic_leak.first_dim(); }
};

using TrainedSubtractor = Subtractor;

inline Subtractor make_subtractor(const SubtractionConfig& config, const Matrix& x, const Matrix& y) {
  config.validate();
  if (x.rows() != y.rows()) {
    throw ShapeError("subtraction: condition has " + std::to_string(x.rows()) + " rows, target has " +
                     std::to_string(y.rows()));
  }
  if (x.cols() < 1 || y.cols() < 1) throw ShapeError("subtraction: condition and target need >= 1 column");
  Subtractor s;
  s.config = config;
  s.target_scaler = Standardizer::fit(y);
  s.condition_scaler = Standardizer::fit(x);
  const auto gen_dims = layer_layout(y.cols(), config.generator_dims, config.z_dim);
  s.generator = init_mlp(gen_dims, config.activation, derive_seed(config.seed, 1));
  const auto rec_dims = layer_layout(config.z_dim, config.generator_dims, y.cols());
  s.reconstructor = init_mlp(rec_dims, config.activation, derive_seed(config.seed, 2));
  s.critic_full = mi::Critic::make({{"Y", y.cols()}, {"X", x.cols()}, {"Z", config.z_dim}}, 1,
                                   config.discriminator_dims, config.activation, derive_seed(config.seed, 3));
  s.critic_leak = mi::Critic::make({{"X", x.cols()}, {"Z", config.z_dim}}, 1, config.discriminator_dims,
                                   config.activation, derive_seed(config.seed, 4));
  s.generator_opt = OptimizerState::make(OptimizerKind::adam, config.lr_generator, config.clip_norm);
  s.reconstructor_opt = OptimizerState::make(OptimizerKind::adam, config.lr_generator, config.clip_norm);
  s.full_opt = OptimizerState::make(OptimizerKind::adam, config.lr_discriminator, config.clip_norm);
  s.leak_opt = OptimizerState::make(OptimizerKind::adam, config.lr_discriminator, config.clip_norm);
  s.rng = Rng(derive_seed(config.seed, 5));
  return s;
}

inline Matrix generate_representation(const Subtractor& s, const Matrix& y) {
  if (y.cols() != s.target_dim()) {
    throw ShapeError("generate_representation: expected " + std::to_string(s.target_dim()) + " target columns, got " +
                     std::to_string(y.cols()));
  }
  return predict(s.generator, s.target_scaler.apply(y));
}

// One joint step on generator and reconstructor minimizing the mean squared
// error between N_B(N_A(y)) and the standardized y. Returns the loss before
// the step.
inline double pretrain_step(Subtractor& s, const Matrix& y_batch) {
  const Matrix ys = s.target_scaler.apply(y_batch);
  auto gen = forward(s.generator, ys);
  auto rec = forward(s.reconstructor, gen.output);
  const Matrix diff = rec.output - ys;
  const double loss = diff.squaredNorm() / static_cast<double>(diff.size());
  require_finite(loss, "pretrain reconstruction loss");
  const Matrix grad = diff * (2.0 / static_cast<double>(diff.size()));
  auto rb = backward(s.reconstructor, rec.cache, grad);
  auto gb = backward(s.generator, gen.cache, rb.input_grad);
  optimizer_step(s.reconstructor, std::move(rb.grads), s.reconstructor_opt);
  optimizer_step(s.generator, std::move(gb.grads), s.generator_opt);
  return loss;
}

namespace detail {

struct CriticPass {
  double value = 0.0;
  Matrix input_grad;  // d value / d critic input, joint rows then marginal rows
};

// Clamped DV value of a frozen critic on stacked joint/marginal inputs, with
// the gradient of that value with respect to the inputs.
inline CriticPass critic_value_and_input_grad(const mi::Critic& critic, const Matrix& joint, const Matrix& marginal,
                                              double tau) {
  Matrix stacked(joint.rows() + marginal.rows(), joint.cols());
  stacked.topRows(joint.rows()) = joint;
  stacked.bottomRows(marginal.rows()) = marginal;
  auto fwd = forward(critic.model, stacked);
  const auto n = static_cast<std::size_t>(joint.rows());
  std::span<const double> scores(fwd.output.data(), static_cast<std::size_t>(fwd.output.size()));
  const auto obj = mi::smile_objective(scores.first(n), scores.subspan(n), tau);
  Matrix out_grad(stacked.rows(), 1);
  out_grad.topRows(joint.rows()) = obj.d_joint;
  out_grad.bottomRows(marginal.rows()) = obj.d_marginal;
  return {obj.value, backward(critic.model, fwd.cache, out_grad).input_grad};
}

}  // namespace detail

// One generator step minimizing l2 = lambda * I(X;Z) - I(Y;X,Z) through
// frozen critics. Returns l2 before the step.
inline double subtraction_step(Subtractor& s, const Matrix& x_batch, const Matrix& y_batch, double lambda) {
  if (x_batch.rows() != y_batch.rows()) throw ShapeError("subtraction_step: batch row counts differ");
  const Index n = y_batch.rows();
  const Matrix xs = s.condition_scaler.apply(x_batch);
  const Matrix ys = s.target_scaler.apply(y_batch);
  auto gen = forward(s.generator, ys);
  const Matrix& z = gen.output;
  const Index dx = xs.cols(), dy = ys.cols(), dz = z.cols();

  const auto pf = s.rng.permutation(n);
  const auto pl = s.rng.permutation(n);
  const Matrix xz = hconcat({&xs, &z});
  const Matrix xz_shuffled = select_rows(xz, pf);
  const Matrix z_shuffled = select_rows(z, pl);
  const Matrix full_joint = hconcat({&ys, &xz});
  const Matrix full_marginal = hconcat({&ys, &xz_shuffled});
  const Matrix leak_joint = xz;
  const Matrix leak_marginal = hconcat({&xs, &z_shuffled});

  const auto full = detail::critic_value_and_input_grad(s.critic_full, full_joint, full_marginal, s.config.tau);
  const auto leak = detail::critic_value_and_input_grad(s.critic_leak, leak_joint, leak_marginal, s.config.tau);
  const double l2 = lambda * leak.value - full.value;
  require_finite(l2, "subtraction objective");

  // Route input gradients back to the rows of z they came from.
  Matrix dz_total = Matrix::Zero(n, dz);
  const Index zf = dy + dx, zl = dx;
  for (Index i = 0; i < n; ++i) {
    dz_total.row(i) -= full.input_grad.block(i, zf, 1, dz);
    dz_total.row(pf[static_cast<std::size_t>(i)]) -= full.input_grad.block(n + i, zf, 1, dz);
    dz_total.row(i) += lambda * leak.input_grad.block(i, zl, 1, dz);
    dz_total.row(pl[static_cast<std::size_t>(i)]) += lambda * leak.input_grad.block(n + i, zl, 1, dz);
  }
  auto gb = backward(s.generator, gen.cache, dz_total);
  optimizer_step(s.generator, std::move(gb.grads), s.generator_opt);
  return l2;
}

// One maximizing step for each critic with z = N_A(y) held fixed. Returns the
// post-step estimates (full, leak) in nats.
inline std::pair<double, double> discriminator_step(Subtractor& s, const Matrix& x_batch, const Matrix& y_batch) {
  if (x_batch.rows() != y_batch.rows()) throw ShapeError("discriminator_step: batch row counts differ");
  const Matrix xs = s.condition_scaler.apply(x_batch);
  const Matrix ys = s.target_scaler.apply(y_batch);
  const Matrix z = predict(s.generator, ys);
  const Matrix xz = hconcat({&xs, &z});
  mi::PairedBatch full_joint{ys, xz};
  mi::PairedBatch full_marginal{ys, select_rows(xz, s.rng.permutation(xz.rows()))};
  mi::PairedBatch leak_joint{xs, z};
  mi::PairedBatch leak_marginal{xs, select_rows(z, s.rng.permutation(z.rows()))};
  const double full = mi::critic_train_step(s.critic_full, full_joint, full_marginal, s.full_opt, s.config.tau);
  const double leak = mi::critic_train_step(s.critic_leak, leak_joint, leak_marginal, s.leak_opt, s.config.tau);
  return {full, leak};
}

// Current critic estimates on a batch without training them.
inline std::pair<double, double> critic_estimates(Subtractor& s, const Matrix& x_batch, const Matrix& y_batch) {
  const Matrix xs = s.condition_scaler.apply(x_batch);
  const Matrix ys = s.target_scaler.apply(y_batch);
  const Matrix z = predict(s.generator, ys);
  const Matrix xz = hconcat({&xs, &z});
  const double full = mi::smile_estimate(s.critic_full, {ys, xz}, {ys, select_rows(xz, s.rng.permutation(xz.rows()))},
                                         s.config.tau)
                          .value_nats;
  const double leak =
      mi::smile_estimate(s.critic_leak, {xs, z}, {xs, select_rows(z, s.rng.permutation(z.rows()))}, s.config.tau)
          .value_nats;
  return {full, leak};
}

using EpochCallback = std::function<void(const TraceRecord&)>;

// Pretraining for epochs [0, n1), generator subtraction for [n1, n2); the
// critics take n3 steps in every epoch of both stages.
inline TrainedSubtractor train_information_subtraction(const SubtractionConfig& config, const Matrix& x,
                                                       const Matrix& y, const EpochCallback& on_epoch = {}) {
  Subtractor s = make_subtractor(config, x, y);
  const Index batch = std::min(config.batch_size, x.rows());
  for (int epoch = 0; epoch < config.n2; ++epoch) {
    const auto idx = s.rng.sample_without_replacement(x.rows(), batch);
    const Matrix xb = select_rows(x, idx);
    const Matrix yb = select_rows(y, idx);
    TraceRecord rec;
    rec.epoch = epoch;
    if (epoch < config.n1) {
      rec.stage = Stage::pretrain;
      rec.recon_loss = pretrain_step(s, yb);
    } else {
      rec.stage = Stage::subtract;
      rec.l2 = subtraction_step(s, xb, yb, config.lambda);
    }
    std::pair<double, double> est;
    if (config.n3 == 0) {
      est = critic_estimates(s, xb, yb);
    } else {
      for (int k = 0; k < config.n3; ++k) est = discriminator_step(s, xb, yb);
    }
    rec.mi_full_nats = est.first;
    rec.mi_leak_nats = est.second;
    s.trace.records.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return s;
}

}  // namespace infosub::subtraction
