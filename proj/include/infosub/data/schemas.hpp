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

#include <string>

#include "infosub/data/csv.hpp"

namespace infosub::data {

// Adult census income. '?' is kept as an ordinary category and fnlwgt (a
// sampling weight) is dropped, giving 105 encoded feature columns.
inline Schema adult_schema() {
  Schema s;
  const auto add = [&](std::string name, ColumnKind kind, Role role) { s.columns.push_back({std::move(name), kind, role, {}}); };
  add("age", ColumnKind::continuous, Role::feature);
  add("workclass", ColumnKind::categorical, Role::feature);
  add("fnlwgt", ColumnKind::continuous, Role::ignore);
  add("education", ColumnKind::categorical, Role::feature);
  add("education_num", ColumnKind::continuous, Role::feature);
  add("marital_status", ColumnKind::categorical, Role::feature);
  add("occupation", ColumnKind::categorical, Role::feature);
  add("relationship", ColumnKind::categorical, Role::feature);
  add("race", ColumnKind::categorical, Role::feature);
  s.columns.push_back({"sex", ColumnKind::binary, Role::protected_attr, {"Female", "Male"}});
  add("capital_gain", ColumnKind::continuous, Role::feature);
  add("capital_loss", ColumnKind::continuous, Role::feature);
  add("hours_per_week", ColumnKind::continuous, Role::feature);
  add("native_country", ColumnKind::categorical, Role::feature);
  s.columns.push_back({"income", ColumnKind::binary, Role::target, {"<=50K", ">50K"}});
  return s;
}

// Forest cover type as written by tools/prepare_covtype.py: ten continuous
// measurements, 40 soil indicators, the wilderness area (domain, 1..4) and
// the cover type (target, 1..7).
inline Schema covtype_schema() {
  Schema s;
  for (const char* name : {"elevation", "aspect", "slope", "horizontal_distance_to_hydrology",
                           "vertical_distance_to_hydrology", "horizontal_distance_to_roadways", "hillshade_9am",
                           "hillshade_noon", "hillshade_3pm", "horizontal_distance_to_fire_points"}) {
    s.columns.push_back({name, ColumnKind::continuous, Role::feature, {}});
  }
  for (int i = 1; i <= 40; ++i) {
    s.columns.push_back({"soil_type_" + std::to_string(i), ColumnKind::binary, Role::feature, {"0", "1"}});
  }
  s.columns.push_back({"wilderness_area", ColumnKind::categorical, Role::domain, {"1", "2", "3", "4"}});
  s.columns.push_back({"cover_type", ColumnKind::categorical, Role::target, {"1", "2", "3", "4", "5", "6", "7"}});
  return s;
}

}  // namespace infosub::data
