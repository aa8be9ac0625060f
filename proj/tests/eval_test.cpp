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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "infosub/data/synthetic.hpp"
#include "infosub/eval/render.hpp"
#include "support/fairness_oracle.hpp"

namespace infosub::eval {
namespace {

using testing::brute_fairness;

TEST(Fairness, PerfectPredictor) {
  const std::vector<int> y{0, 1, 1, 0, 2}, c{0, 0, 1, 1, 1};
  const auto r = fairness_metrics(y, y, c);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.ba, 1.0);
  EXPECT_EQ(r.gap_rms, 0.0);
  EXPECT_EQ(r.gap_max, 0.0);
  EXPECT_EQ(r.excluded_classes, std::vector<int>{2});
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Fairness, HandCase) {
  // Group 0 gets both classes right; group 1 misses half of class 0.
  const std::vector<int> truth{0, 0, 1, 1, 0, 0, 1, 1};
  const std::vector<int> pred{0, 0, 1, 1, 0, 1, 1, 1};
  const std::vector<int> prot{0, 0, 0, 0, 1, 1, 1, 1};
  const auto r = fairness_metrics(pred, truth, prot);
  EXPECT_EQ(*r.tpr[0][0], 1.0);
  EXPECT_EQ(*r.tpr[1][0], 0.5);
  EXPECT_EQ(*r.tpr[1][1], 1.0);
  EXPECT_EQ(*r.gap[0], 0.5);
  EXPECT_EQ(*r.gap[1], 0.0);
  EXPECT_NEAR(r.gap_rms, 0.35355339059327379, 1e-12);
  EXPECT_NEAR(r.gap_rms, std::sqrt(0.125), 1e-12);
  EXPECT_EQ(r.gap_max, 0.5);
  EXPECT_DOUBLE_EQ(r.accuracy, 7.0 / 8);
  EXPECT_DOUBLE_EQ(r.ba, (0.75 + 1.0) / 2);
}

TEST(Fairness, MatchesBruteForceOnRandomInstances) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(200);
    const int k = 2 + static_cast<int>(rng.below(4));
    std::vector<int> p(n), t(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng.below(static_cast<std::size_t>(k)));
      p[i] = rng.uniform(0, 1) < 0.6 ? t[i] : static_cast<int>(rng.below(static_cast<std::size_t>(k)));
      c[i] = static_cast<int>(rng.below(2));
    }
    const auto r = fairness_metrics(p, t, c, k);
    const auto b = brute_fairness(p, t, c, k);
    ASSERT_EQ(r.accuracy, b.accuracy) << trial;
    ASSERT_EQ(r.ba, b.ba) << trial;
    ASSERT_EQ(r.gap_rms, b.gap_rms) << trial;
    ASSERT_EQ(r.gap_max, b.gap_max) << trial;
    for (const auto& g : r.gap) {
      if (g) {
        ASSERT_GE(r.gap_max, std::abs(*g));
      }
    }
    ASSERT_LE(r.gap_rms, r.gap_max + 1e-15);
    for (const auto& row : r.tpr) {
      for (const auto& v : row) {
        if (v) {
          ASSERT_TRUE(*v >= 0 && *v <= 1);
        }
      }
    }
  }
}

TEST(Fairness, BalancedSymmetricTableGivesBaEqualAccuracy) {
  // 3 classes, 30 rows each, each class predicted right 20 times and wrong
  // 10 times.
  std::vector<int> p, t, c;
  for (int y = 0; y < 3; ++y) {
    for (int i = 0; i < 30; ++i) {
      t.push_back(y);
      p.push_back(i < 20 ? y : (y + 1) % 3);
      c.push_back(i % 2);
    }
  }
  const auto r = fairness_metrics(p, t, c);
  EXPECT_DOUBLE_EQ(r.ba, r.accuracy);
  EXPECT_DOUBLE_EQ(r.accuracy, 2.0 / 3);
}

TEST(Fairness, Errors) {
  EXPECT_THROW(fairness_metrics({}, {}, {}), std::invalid_argument);
  EXPECT_THROW(fairness_metrics({0}, {0}, {2}), std::invalid_argument);
  EXPECT_THROW(fairness_metrics({0, 1}, {0}, {0, 1}), std::invalid_argument);
}

TEST(InfoReport, IdentityCellsAreExact) {
  auto [x, y] = data::gen_correlated_gaussians(800, 0.7, 1, RngSeed{2});
  Rng rng(3);
  Matrix z(800, 2);
  for (Index i = 0; i < 800; ++i) z.row(i) << y(i, 0) + rng.normal(0, 0.3), rng.normal();
  const auto r = information_report(z, x, y, {});
  EXPECT_EQ(r.h_y_given_x, r.h_y - r.i_xy);
  EXPECT_EQ(r.i_zy_given_x, r.i_zxy - r.i_xy);
  EXPECT_EQ(r.samples, 800);
  EXPECT_EQ(r.estimators.at("i_zy_given_x"), "identity: i_zxy - i_xy");
}

TEST(InfoReport, IndependentNoiseCarriesNothing) {
  auto [x, y] = data::gen_correlated_gaussians(2000, 0.7, 1, RngSeed{4});
  Rng rng(5);
  Matrix z(2000, 1);
  for (Index i = 0; i < 2000; ++i) z(i, 0) = rng.normal();
  const auto r = information_report(z, x, y, {});
  EXPECT_NEAR(r.i_zy, 0.0, 0.1);
  EXPECT_NEAR(r.i_zxy, r.i_xy, 0.1);
}

// Binned entropy against KSG on a deterministic map: the agreement is an
// estimator coincidence that drifts with n, so it is checked at the sample
// size of the synthetic experiments.
TEST(InfoReport, PerfectRepresentationSaturatesConditionalEntropy) {
  auto [x, y] = data::gen_correlated_gaussians(1500, 0.7, 1, RngSeed{6});
  const auto r = information_report(y, x, y, {});
  EXPECT_NEAR(r.i_zy_given_x, r.h_y_given_x, 0.3);
}

TEST(InfoReport, SubsamplesToOracleBudget) {
  auto [x, y] = data::gen_correlated_gaussians(900, 0.5, 1, RngSeed{7});
  mi::OracleConfig oc;
  oc.max_samples = 300;
  const auto r = information_report(y, x, y, oc);
  EXPECT_EQ(r.samples, 300);
  EXPECT_THROW(information_report(y.topRows(10), x, y, oc), ShapeError);
}

TEST(Sweep, ShapeSeedsAndValidation) {
  auto [x, y] = data::gen_correlated_gaussians(300, 0.6, 1, RngSeed{8});
  subtraction::SubtractionConfig cfg;
  cfg.z_dim = 2;
  cfg.n1 = 5;
  cfg.n2 = 15;
  cfg.n3 = 1;
  cfg.batch_size = 64;
  cfg.generator_dims = {8};
  cfg.discriminator_dims = {8};
  const auto s = lambda_sweep(cfg, {0.0, 1.0, 2.0}, x, y, {});
  ASSERT_EQ(s.points.size(), 3u);
  EXPECT_EQ(s.points[2].lambda, 2.0);
  std::ostringstream csv;
  s.write_csv(csv);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_THROW(lambda_sweep(cfg, {1.0}, x, y, {}), std::invalid_argument);
  EXPECT_THROW(lambda_sweep(cfg, {1.0, 1.0}, x, y, {}), std::invalid_argument);
}

TEST(SweepResult, LeakIncreasesWithSlack) {
  SweepResult s;
  for (double leak : {1.0, 0.8, 0.85, 1.2}) s.points.push_back({0, 0, leak, 0, 0});
  EXPECT_EQ(s.leak_increases(0.1), std::vector<std::size_t>{3});
  EXPECT_EQ(s.leak_increases(0.01).size(), 2u);
}

TEST(Render, JsonAndTables) {
  InfoReport r;
  r.i_xy = 0.891;
  r.h_y = 3.276;
  r.h_y_given_x = r.h_y - r.i_xy;
  const auto j = to_json(r);
  EXPECT_EQ(j["cells"]["i_xy"].get<double>(), 0.891);
  EXPECT_EQ(j["units"], "bits");
  std::ostringstream os;
  render_info_table(os, r, "S", "G");
  EXPECT_NE(os.str().find("I(Z;G|S)"), std::string::npos);
  EXPECT_NE(os.str().find("3.28"), std::string::npos);
  std::ostringstream fos;
  render_fairness_table(fos, {{"X", fairness_metrics({0, 1}, {0, 1}, {0, 1})}});
  EXPECT_NE(fos.str().find("1.00"), std::string::npos);
  const auto fj = to_json(fairness_metrics({0, 1}, {0, 1}, {0, 1}));
  EXPECT_TRUE(fj["gap"][0].is_null());
}

}  // namespace
}  // namespace infosub::eval
