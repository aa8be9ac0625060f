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

// Kraskov-Stoegbauer-Grassberger estimator (first variant):
//   I(X;Y) = psi(k) + psi(n) - < psi(n_x + 1) + psi(n_y + 1) >
// with max-norm neighbourhoods. Columns are z-scored first; columns holding
// repeated values get a seeded jitter of 1e-10 so ties are broken
// deterministically.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "infosub/mi/estimate.hpp"
#include "infosub/numerics/rng.hpp"

namespace infosub::mi {

inline constexpr double kKsgJitter = 1e-10;
inline constexpr std::uint64_t kKsgJitterSeed = 0x6b7367u;

namespace detail {

inline bool has_ties(const Matrix& m, Index col) {
  std::vector<double> v(m.rows());
  for (Index r = 0; r < m.rows(); ++r) v[static_cast<std::size_t>(r)] = m(r, col);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

inline Matrix ksg_prepare(const Matrix& m, std::uint64_t stream) {
  Matrix z = Standardizer::fit(m).apply(m);
  Rng rng(RngSeed{kKsgJitterSeed ^ (stream * 0x9e3779b97f4a7c15ull)});
  for (Index c = 0; c < z.cols(); ++c) {
    if (!has_ties(z, c)) continue;
    for (Index r = 0; r < z.rows(); ++r) z(r, c) += kKsgJitter * rng.uniform(-1.0, 1.0);
  }
  return z;
}

inline double max_norm_distance(const double* a, const double* b, Index dim) {
  double d = 0.0;
  for (Index i = 0; i < dim; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace detail

inline MiEstimate ksg_mi(const Matrix& x, const Matrix& y, int k) {
  if (x.rows() != y.rows()) throw ShapeError("ksg_mi: x and y have different row counts");
  if (k < 1) throw std::invalid_argument("ksg_mi: k must be >= 1");
  const Index n = x.rows();
  if (n <= k) throw std::invalid_argument("ksg_mi: need more rows than k");
  require_finite(x, "ksg_mi x");
  require_finite(y, "ksg_mi y");

  const Matrix xs = detail::ksg_prepare(x, 1);
  const Matrix ys = detail::ksg_prepare(y, 2);
  const Index dx = xs.cols(), dy = ys.cols();

  std::vector<double> dist_x(static_cast<std::size_t>(n)), dist_y(static_cast<std::size_t>(n)),
      dist_joint(static_cast<std::size_t>(n));
  double digamma_sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double* xi = xs.row(i).data();
    const double* yi = ys.row(i).data();
    for (Index j = 0; j < n; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      dist_x[sj] = detail::max_norm_distance(xi, xs.row(j).data(), dx);
      dist_y[sj] = detail::max_norm_distance(yi, ys.row(j).data(), dy);
      dist_joint[sj] = std::max(dist_x[sj], dist_y[sj]);
    }
    // Exclude the point itself from the neighbour search.
    dist_joint[static_cast<std::size_t>(i)] = std::numeric_limits<double>::infinity();
    std::vector<double> scratch = dist_joint;
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    const double eps = scratch[static_cast<std::size_t>(k - 1)];

    Index nx = 0, ny = 0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      if (dist_x[static_cast<std::size_t>(j)] < eps) ++nx;
      if (dist_y[static_cast<std::size_t>(j)] < eps) ++ny;
    }
    digamma_sum += boost::math::digamma(static_cast<double>(nx + 1)) + boost::math::digamma(static_cast<double>(ny + 1));
  }
  const double nats = boost::math::digamma(static_cast<double>(k)) + boost::math::digamma(static_cast<double>(n)) -
                      digamma_sum / static_cast<double>(n);
  return MiEstimate::from_nats(nats, n, Estimator::ksg);
}

}  // namespace infosub::mi
