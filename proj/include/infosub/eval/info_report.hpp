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

#include <map>
#include <string>

#include "infosub/mi/oracle.hpp"

namespace infosub::eval {

// Seven information quantities between a representation Z, a condition X and
// a target Y, in bits. The two conditional cells are derived from the others
// by identity, never estimated directly.
struct InfoReport {
  double i_xy = 0.0;
  double h_y = 0.0;
  double h_y_given_x = 0.0;
  double i_zy = 0.0;
  double i_zx = 0.0;
  double i_zxy = 0.0;  // I(Z, X; Y)
  double i_zy_given_x = 0.0;
  std::map<std::string, std::string> estimators;
  Index samples = 0;
};

inline InfoReport information_report(const Matrix& z, const Matrix& x, const Matrix& y, const mi::OracleConfig& cfg) {
  if (z.rows() != x.rows() || z.rows() != y.rows()) throw ShapeError("information_report: inputs are not row-aligned");
  const mi::Oracle oracle(y.rows(), cfg);
  InfoReport r;
  r.samples = oracle.sample_count();
  r.i_xy = oracle.mi_bits(x, y);
  r.h_y = oracle.entropy_bits(y);
  r.h_y_given_x = r.h_y - r.i_xy;
  r.i_zy = oracle.mi_bits(z, y);
  r.i_zx = oracle.mi_bits(z, x);
  const Matrix zx = hconcat({&z, &x});
  r.i_zxy = oracle.mi_bits(zx, y);
  r.i_zy_given_x = r.i_zxy - r.i_xy;
  const std::string ksg = "ksg(k=" + std::to_string(cfg.ksg_k) + ")";
  const std::string plugin = "plugin(bins=" + std::to_string(cfg.plugin_bins) + ")";
  r.estimators = {{"i_xy", ksg},
                  {"h_y", plugin},
                  {"h_y_given_x", "identity: h_y - i_xy"},
                  {"i_zy", ksg},
                  {"i_zx", ksg},
                  {"i_zxy", ksg},
                  {"i_zy_given_x", "identity: i_zxy - i_xy"}};
  return r;
}

}  // namespace infosub::eval
