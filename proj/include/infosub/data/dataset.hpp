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

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infosub/numerics/matrix.hpp"

namespace infosub::data {

enum class ColumnKind { continuous, categorical, binary };
enum class Role { target, feature, protected_attr, domain, ignore };

inline const char* to_string(ColumnKind k) {
  switch (k) {
    case ColumnKind::continuous: return "continuous";
    case ColumnKind::categorical: return "categorical";
    case ColumnKind::binary: return "binary";
  }
  return "?";
}

inline const char* to_string(Role r) {
  switch (r) {
    case Role::target: return "target";
    case Role::feature: return "feature";
    case Role::protected_attr: return "protected";
    case Role::domain: return "domain";
    case Role::ignore: return "ignore";
  }
  return "?";
}

inline ColumnKind column_kind_from_string(const std::string& s) {
  if (s == "continuous") return ColumnKind::continuous;
  if (s == "categorical") return ColumnKind::categorical;
  if (s == "binary") return ColumnKind::binary;
  throw std::invalid_argument("unknown column kind '" + s + "'");
}

inline Role role_from_string(const std::string& s) {
  if (s == "target") return Role::target;
  if (s == "feature") return Role::feature;
  if (s == "protected") return Role::protected_attr;
  if (s == "domain") return Role::domain;
  if (s == "ignore") return Role::ignore;
  throw std::invalid_argument("unknown column role '" + s + "'");
}

// One source column and the encoded columns it occupies in Dataset::values.
// Categorical features are one-hot (width = number of categories); label-like
// categorical columns (target, protected, domain) and binary columns are kept
// as a single integer code indexing `categories`.
struct ColumnGroup {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  Role role = Role::feature;
  Index offset = 0;
  Index width = 1;
  std::vector<std::string> categories;
  bool one_hot = false;
  // Set once the column has been z-scored (mean, standard deviation).
  std::optional<std::pair<double, double>> standardization;
};

struct Dataset {
  std::vector<ColumnGroup> groups;
  std::vector<std::string> column_names;
  Matrix values;
  Index dropped_rows = 0;
  std::vector<std::string> warnings;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }

  bool has(const std::string& name) const {
    return std::any_of(groups.begin(), groups.end(), [&](const ColumnGroup& g) { return g.name == name; });
  }

  const ColumnGroup& group(const std::string& name) const {
    for (const auto& g : groups) {
      if (g.name == name) return g;
    }
    throw std::invalid_argument("dataset has no column '" + name + "'");
  }

  Matrix column(const std::string& name) const {
    const auto& g = group(name);
    return values.middleCols(g.offset, g.width);
  }

  Matrix columns(const std::vector<std::string>& names) const {
    std::vector<Matrix> parts;
    for (const auto& n : names) parts.push_back(column(n));
    std::vector<const Matrix*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    if (ptrs.empty()) return Matrix(rows(), 0);
    return hconcat(std::span<const Matrix* const>(ptrs));
  }

  std::vector<std::string> names_with_role(Role role) const {
    std::vector<std::string> out;
    for (const auto& g : groups) {
      if (g.role == role) out.push_back(g.name);
    }
    return out;
  }

  Matrix role_matrix(Role role) const { return columns(names_with_role(role)); }

  // Integer codes of a single-column categorical/binary group.
  std::vector<int> labels(const std::string& name) const {
    const auto& g = group(name);
    if (g.width != 1) throw std::invalid_argument("column '" + name + "' is one-hot encoded, not a label column");
    std::vector<int> out(static_cast<std::size_t>(rows()));
    for (Index r = 0; r < rows(); ++r) out[static_cast<std::size_t>(r)] = static_cast<int>(std::lround(values(r, g.offset)));
    return out;
  }

  Dataset take_rows(std::span<const Index> idx) const {
    Dataset d = *this;
    d.values = select_rows(values, idx);
    return d;
  }

  // Category names of a one-hot group, recovered row by row ("" for an
  // all-zero row, i.e. an unknown category).
  std::vector<std::string> decode_one_hot(const std::string& name) const {
    const auto& g = group(name);
    if (!g.one_hot) throw std::invalid_argument("column '" + name + "' is not one-hot encoded");
    std::vector<std::string> out;
    for (Index r = 0; r < rows(); ++r) {
      std::string v;
      for (Index c = 0; c < g.width; ++c) {
        if (values(r, g.offset + c) == 1.0) v = g.categories[static_cast<std::size_t>(c)];
      }
      out.push_back(v);
    }
    return out;
  }

  void add_group(ColumnGroup g, const Matrix& block) {
    if (rows() != 0 && block.rows() != rows() && cols() != 0) {
      throw ShapeError("add_group: row count mismatch for '" + g.name + "'");
    }
    if (has(g.name)) throw std::invalid_argument("add_group: duplicate column '" + g.name + "'");
    g.offset = cols();
    g.width = block.cols();
    if (g.one_hot) {
      for (const auto& c : g.categories) column_names.push_back(g.name + "=" + c);
    } else {
      column_names.push_back(g.name);
    }
    Matrix next(block.rows(), cols() + block.cols());
    if (cols() > 0) next.leftCols(cols()) = values;
    next.rightCols(block.cols()) = block;
    values = std::move(next);
    groups.push_back(std::move(g));
  }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) os << (i ? "," : "") << column_names[i];
    os << "\n" << std::setprecision(17);
    for (Index r = 0; r < rows(); ++r) {
      for (Index c = 0; c < cols(); ++c) os << (c ? "," : "") << values(r, c);
      os << "\n";
    }
  }

  void write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_csv(os);
  }
};

// Builds a dataset of plain numeric columns.
inline Dataset numeric_dataset(const std::vector<std::pair<std::string, Role>>& cols, const Matrix& values) {
  if (static_cast<Index>(cols.size()) != values.cols()) throw ShapeError("numeric_dataset: name/column mismatch");
  Dataset d;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    ColumnGroup g;
    g.name = cols[i].first;
    g.role = cols[i].second;
    d.add_group(g, values.col(static_cast<Index>(i)));
  }
  return d;
}

}  // namespace infosub::data
