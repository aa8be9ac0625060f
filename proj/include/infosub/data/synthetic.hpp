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

#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "infosub/data/dataset.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::data {

// Researchers from three countries: performance Y = V * W, where the training
// experience W depends on the country X and the aptitude V does not.
//   W | X=0 ~ N(0.7, 0.05),  W | X=1 ~ N(0.5, 0.1),  W | X=2 ~ N(0.3, 0.07)
// N(m, s) is mean and standard deviation. V ~ N(v_mean, v_std) truncated to
// positive values.
struct FairSynthConfig {
  Index n = 1500;
  std::array<double, 3> country_prior{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::array<double, 3> w_mean{0.7, 0.5, 0.3};
  std::array<double, 3> w_std{0.05, 0.1, 0.07};
  double v_mean = 1.0;
  double v_std = 0.2;

  void validate() const {
    if (n < 1) throw std::invalid_argument("FairSynthConfig: n must be >= 1");
    double total = 0.0;
    for (double p : country_prior) {
      if (p < 0) throw std::invalid_argument("FairSynthConfig: negative country prior");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("FairSynthConfig: country priors must sum to 1");
    for (double s : w_std) {
      if (!(s > 0)) throw std::invalid_argument("FairSynthConfig: w stds must be > 0");
    }
    if (!(v_std > 0)) throw std::invalid_argument("FairSynthConfig: v_std must be > 0");
  }
};

// Columns X (protected, country code), V (feature), W (feature), Y (target).
inline Dataset gen_fair_synthetic(const FairSynthConfig& config, RngSeed seed) {
  config.validate();
  Rng rng(seed);
  std::discrete_distribution<int> country(config.country_prior.begin(), config.country_prior.end());
  Matrix values(config.n, 4);
  for (Index i = 0; i < config.n; ++i) {
    const int x = country(rng.engine());
    const double w = rng.normal(config.w_mean[static_cast<std::size_t>(x)], config.w_std[static_cast<std::size_t>(x)]);
    double v = 0.0;
    do {
      v = rng.normal(config.v_mean, config.v_std);
    } while (v <= 0.0);
    values.row(i) << x, v, w, v * w;
  }
  Dataset d;
  ColumnGroup gx;
  gx.name = "X";
  gx.kind = ColumnKind::categorical;
  gx.role = Role::protected_attr;
  gx.categories = {"0", "1", "2"};
  d.add_group(gx, values.col(0));
  for (auto [i, name, role] : {std::tuple{1, "V", Role::feature}, std::tuple{2, "W", Role::feature},
                                std::tuple{3, "Y", Role::target}}) {
    ColumnGroup g;
    g.name = name;
    g.role = role;
    d.add_group(g, values.col(i));
  }
  return d;
}

inline double analytic_gaussian_mi(double rho, Index dim = 1) {
  return -0.5 * static_cast<double>(dim) * std::log(1.0 - rho * rho);
}

// Per-dimension bivariate normal pairs with correlation rho.
inline std::pair<Matrix, Matrix> gen_correlated_gaussians(Index n, double rho, Index dim, RngSeed seed) {
  if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("gen_correlated_gaussians: |rho| must be < 1");
  if (n < 1 || dim < 1) throw std::invalid_argument("gen_correlated_gaussians: n and dim must be >= 1");
  Rng rng(seed);
  Matrix x(n, dim), y(n, dim);
  const double c = std::sqrt(1.0 - rho * rho);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double a = rng.normal(), b = rng.normal();
      x(i, j) = a;
      y(i, j) = rho * a + c * b;
    }
  }
  return {std::move(x), std::move(y)};
}

}  // namespace infosub::data
