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

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "infosub/eval/fairness.hpp"
#include "infosub/eval/info_report.hpp"
#include "infosub/eval/sweep.hpp"
#include "infosub/subtraction/venn.hpp"
#include "nlohmann/json.hpp"

namespace infosub::eval {

using Json = nlohmann::ordered_json;

inline Json to_json(const InfoReport& r) {
  Json cells = {{"i_xy", r.i_xy},   {"h_y", r.h_y},     {"h_y_given_x", r.h_y_given_x},
                {"i_zy", r.i_zy},   {"i_zx", r.i_zx},   {"i_zxy", r.i_zxy},
                {"i_zy_given_x", r.i_zy_given_x}};
  Json est = Json::object();
  for (const auto& [k, v] : r.estimators) est[k] = v;
  return {{"units", "bits"}, {"samples", r.samples}, {"cells", cells}, {"estimators", est}};
}

inline Json to_json(const FairnessReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json tpr = Json::array();
  for (const auto& row : r.tpr) {
    Json j = Json::array();
    for (const auto& v : row) j.push_back(opt(v));
    tpr.push_back(j);
  }
  Json gap = Json::array();
  for (const auto& v : r.gap) gap.push_back(opt(v));
  return {{"accuracy", r.accuracy}, {"ba", r.ba},   {"gap_rms", r.gap_rms},
          {"gap_max", r.gap_max},   {"tpr", tpr},   {"gap", gap},
          {"excluded_classes", r.excluded_classes}, {"warnings", r.warnings}};
}

inline Json to_json(const SweepResult& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) {
    pts.push_back({{"lambda", p.lambda},
                   {"i_full_bits", p.i_full_bits},
                   {"i_leak_bits", p.i_leak_bits},
                   {"critic_full_bits", p.critic_full_bits},
                   {"critic_leak_bits", p.critic_leak_bits}});
  }
  return {{"units", "bits"}, {"estimator", "ksg"}, {"points", pts}};
}

inline Json to_json(const subtraction::VennDecomposition& v) {
  Json base = Json::object();
  for (std::size_t i = 0; i < 3; ++i) base["H(" + v.names[i] + ")"] = v.entropy_bits[i];
  base["I(" + v.names[0] + ";" + v.names[1] + ")"] = v.pair_mi_bits[0];
  base["I(" + v.names[1] + ";" + v.names[2] + ")"] = v.pair_mi_bits[1];
  base["I(" + v.names[2] + ";" + v.names[0] + ")"] = v.pair_mi_bits[2];
  Json rows = Json::array();
  for (const auto& s : v.sectors) {
    rows.push_back({{"sector", s.name},
                    {"condition", s.condition},
                    {"conditional_bits", s.conditional_bits},
                    {"leak_bits", s.leak_bits},
                    {"base_bits", s.base_bits},
                    {"joint_bits", s.joint_bits}});
  }
  return {{"units", "bits"}, {"base", base}, {"sectors", rows}};
}

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

namespace detail {

inline void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c] + std::string(width[c] - r[c].size() + (c + 1 < r.size() ? 2 : 0), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

}  // namespace detail

// Seven-column layout: the three condition-only cells, then the four that
// involve Z.
inline void render_info_table(std::ostream& os, const InfoReport& r, const std::string& x, const std::string& y,
                              const std::string& z = "Z") {
  detail::print_table(os, {{"I(" + x + ";" + y + ")", "H(" + y + ")", "H(" + y + "|" + x + ")", "|",
                            "I(" + z + ";" + y + ")", "I(" + z + ";" + x + ")", "I(" + z + "," + x + ";" + y + ")",
                            "I(" + z + ";" + y + "|" + x + ")"},
                           {fixed2(r.i_xy), fixed2(r.h_y), fixed2(r.h_y_given_x), "|", fixed2(r.i_zy), fixed2(r.i_zx),
                            fixed2(r.i_zxy), fixed2(r.i_zy_given_x)}});
}

inline void render_fairness_table(std::ostream& os, const std::vector<std::pair<std::string, FairnessReport>>& rows) {
  std::vector<std::vector<std::string>> t{{"features", "accuracy", "BA", "Gap_RMS", "Gap_max"}};
  for (const auto& [name, r] : rows) {
    t.push_back({name, fixed2(r.accuracy), fixed2(r.ba), fixed2(r.gap_rms), fixed2(r.gap_max)});
  }
  detail::print_table(os, t);
}

inline void render_accuracy_table(std::ostream& os, const std::vector<std::pair<std::string, double>>& rows) {
  std::vector<std::vector<std::string>> t{{}, {}};
  for (const auto& [name, acc] : rows) {
    t[0].push_back(name);
    t[1].push_back(fixed2(acc));
  }
  detail::print_table(os, t);
}

inline void render_sweep_table(std::ostream& os, const SweepResult& s) {
  std::vector<std::vector<std::string>> t{{"lambda", "I(Y;X,Z)", "I(X;Z)"}};
  for (const auto& p : s.points) t.push_back({fixed2(p.lambda), fixed2(p.i_full_bits), fixed2(p.i_leak_bits)});
  detail::print_table(os, t);
}

inline void render_venn_table(std::ostream& os, const subtraction::VennDecomposition& v) {
  const auto& n = v.names;
  detail::print_table(os, {{"H(" + n[0] + ")", fixed2(v.entropy_bits[0]), "H(" + n[1] + ")", fixed2(v.entropy_bits[1]),
                            "H(" + n[2] + ")", fixed2(v.entropy_bits[2])},
                           {"I(" + n[0] + ";" + n[1] + ")", fixed2(v.pair_mi_bits[0]), "I(" + n[1] + ";" + n[2] + ")",
                            fixed2(v.pair_mi_bits[1]), "I(" + n[2] + ";" + n[0] + ")", fixed2(v.pair_mi_bits[2])}});
  os << '\n';
  std::vector<std::vector<std::string>> t;
  for (const auto& s : v.sectors) {
    std::string cond;
    for (const auto& c : s.condition) cond += (cond.empty() ? "" : ",") + c;
    t.push_back({"I(" + s.name + ";" + n[0] + "|" + cond + ")", fixed2(s.conditional_bits),
                 "I(" + s.name + ";" + cond + ")", fixed2(s.leak_bits), "I(" + n[0] + ";" + cond + ")",
                 fixed2(s.base_bits)});
  }
  detail::print_table(os, t);
}

}  // namespace infosub::eval
