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

// CSV ingestion: comma separated, header row, UTF-8. Each schema column picks
// a kind and a role; columns present in the file but absent from the schema
// are ignored. Rows containing a missing token in any schema column are
// dropped and counted.

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "infosub/data/dataset.hpp"

namespace infosub::data {

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  Role role = Role::feature;
  // Fixed vocabulary; when empty it is taken from the file (sorted).
  std::vector<std::string> categories;
};

struct Schema {
  std::vector<ColumnSchema> columns;
  std::vector<std::string> missing_tokens{""};
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits one record; double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(trim(field));
  return out;
}

inline bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e;
}

}  // namespace detail

// `fitted`, when given, supplies the category vocabularies (e.g. a training
// file's encoding reused for a test file). Categories unseen in the
// vocabulary become an all-zero one-hot group with a warning; rows with an
// unknown label value are dropped with a warning.
inline Dataset parse_csv_dataset(std::istream& in, const Schema& schema, const Dataset* fitted = nullptr) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("CSV: missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = detail::split_record(line);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) position[header[i]] = i;

  std::vector<const ColumnSchema*> used;
  std::vector<std::size_t> src;
  for (const auto& c : schema.columns) {
    if (c.role == Role::ignore) continue;
    auto it = position.find(c.name);
    if (it == position.end()) throw CsvError("CSV: header has no column '" + c.name + "' required by the schema");
    used.push_back(&c);
    src.push_back(it->second);
  }
  if (used.empty()) throw CsvError("CSV: schema selects no columns");
  const std::set<std::string> missing(schema.missing_tokens.begin(), schema.missing_tokens.end());

  std::vector<std::vector<std::string>> cells;
  Index dropped = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto rec = detail::split_record(line);
    if (rec.size() != header.size()) {
      throw CsvError("CSV: line " + std::to_string(line_no) + " has " + std::to_string(rec.size()) +
                     " fields, header has " + std::to_string(header.size()));
    }
    std::vector<std::string> row;
    bool has_missing = false;
    for (std::size_t k = 0; k < used.size(); ++k) {
      const auto& v = rec[src[k]];
      if (missing.count(v)) has_missing = true;
      row.push_back(v);
    }
    if (has_missing) {
      ++dropped;
      continue;
    }
    cells.push_back(std::move(row));
  }

  Dataset d;
  d.dropped_rows = dropped;
  if (dropped > 0) d.warnings.push_back("dropped " + std::to_string(dropped) + " rows with missing values");

  // Vocabularies.
  std::vector<std::vector<std::string>> vocab(used.size());
  for (std::size_t k = 0; k < used.size(); ++k) {
    const auto& c = *used[k];
    if (c.kind == ColumnKind::continuous) continue;
    if (!c.categories.empty()) {
      vocab[k] = c.categories;
    } else if (fitted && fitted->has(c.name)) {
      vocab[k] = fitted->group(c.name).categories;
    } else {
      std::set<std::string> seen;
      for (const auto& row : cells) seen.insert(row[k]);
      vocab[k].assign(seen.begin(), seen.end());
    }
    if (c.kind == ColumnKind::binary && vocab[k].size() != 2) {
      throw CsvError("CSV: binary column '" + c.name + "' has " + std::to_string(vocab[k].size()) +
                     " distinct values, expected 2");
    }
  }

  // Rows with unknown label values are dropped up front.
  std::vector<bool> keep(cells.size(), true);
  for (std::size_t k = 0; k < used.size(); ++k) {
    const auto& c = *used[k];
    const bool label_like = c.kind != ColumnKind::continuous && !(c.kind == ColumnKind::categorical && c.role == Role::feature);
    if (!label_like) continue;
    Index unknown = 0;
    for (std::size_t r = 0; r < cells.size(); ++r) {
      if (std::find(vocab[k].begin(), vocab[k].end(), cells[r][k]) == vocab[k].end()) {
        if (keep[r]) ++unknown;
        keep[r] = false;
      }
    }
    if (unknown > 0) {
      d.warnings.push_back("dropped " + std::to_string(unknown) + " rows with unknown '" + c.name + "' labels");
    }
  }
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (keep[r]) rows.push_back(r);
  }
  const auto n = static_cast<Index>(rows.size());

  for (std::size_t k = 0; k < used.size(); ++k) {
    const auto& c = *used[k];
    ColumnGroup g;
    g.name = c.name;
    g.kind = c.kind;
    g.role = c.role;
    g.categories = vocab[k];
    if (c.kind == ColumnKind::continuous) {
      Matrix block(n, 1);
      for (Index r = 0; r < n; ++r) {
        const auto& s = cells[rows[static_cast<std::size_t>(r)]][k];
        double v = 0.0;
        if (!detail::parse_double(s, v)) throw CsvError("CSV: column '" + c.name + "' has non-numeric value '" + s + "'");
        block(r, 0) = v;
      }
      d.add_group(g, block);
    } else if (c.kind == ColumnKind::categorical && c.role == Role::feature) {
      g.one_hot = true;
      std::map<std::string, Index> index;
      for (std::size_t i = 0; i < vocab[k].size(); ++i) index[vocab[k][i]] = static_cast<Index>(i);
      Matrix block = Matrix::Zero(n, static_cast<Index>(vocab[k].size()));
      Index unknown = 0;
      for (Index r = 0; r < n; ++r) {
        auto it = index.find(cells[rows[static_cast<std::size_t>(r)]][k]);
        if (it == index.end()) {
          ++unknown;
        } else {
          block(r, it->second) = 1.0;
        }
      }
      if (unknown > 0) {
        d.warnings.push_back(std::to_string(unknown) + " rows have categories of '" + c.name +
                             "' outside the vocabulary (encoded as all zeros)");
      }
      d.add_group(g, block);
    } else {
      std::map<std::string, Index> index;
      for (std::size_t i = 0; i < vocab[k].size(); ++i) index[vocab[k][i]] = static_cast<Index>(i);
      Matrix block(n, 1);
      for (Index r = 0; r < n; ++r) block(r, 0) = static_cast<double>(index.at(cells[rows[static_cast<std::size_t>(r)]][k]));
      d.add_group(g, block);
    }
  }
  return d;
}

inline Dataset load_csv_dataset(const std::string& path, const Schema& schema, const Dataset* fitted = nullptr) {
  std::ifstream in(path);
  if (!in) throw CsvError("CSV: cannot open '" + path + "'");
  return parse_csv_dataset(in, schema, fitted);
}

}  // namespace infosub::data
