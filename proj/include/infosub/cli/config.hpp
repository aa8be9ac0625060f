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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "infosub/data/lotka_volterra.hpp"
#include "infosub/data/schemas.hpp"
#include "infosub/data/split.hpp"
#include "infosub/data/synthetic.hpp"
#include "infosub/mi/estimate.hpp"
#include "infosub/subtraction/config.hpp"
#include "toml.hpp"

namespace infosub::cli {

enum class ExperimentKind { lotka_volterra, venn, fair_synth, adult, covertype, gaussian_oracle, sweep };

inline const std::vector<std::pair<ExperimentKind, std::string>>& experiment_kinds() {
  static const std::vector<std::pair<ExperimentKind, std::string>> kinds = {
      {ExperimentKind::lotka_volterra, "lotka_volterra"},
      {ExperimentKind::venn, "venn"},
      {ExperimentKind::fair_synth, "fair_synth"},
      {ExperimentKind::adult, "adult"},
      {ExperimentKind::covertype, "covertype"},
      {ExperimentKind::gaussian_oracle, "gaussian_oracle"},
      {ExperimentKind::sweep, "sweep"}};
  return kinds;
}

inline std::string to_string(ExperimentKind k) {
  for (const auto& [kind, name] : experiment_kinds()) {
    if (kind == k) return name;
  }
  return "?";
}

inline std::optional<ExperimentKind> kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : experiment_kinds()) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "INFOSUB_OUTPUT_ROOT";

inline std::string default_output_root() {
  const char* env = std::getenv(kOutputRootEnv);
  return env && *env ? env : "runs";
}

struct GaussianOracleTask {
  Index n = 5000;
  std::vector<double> rhos{0.0, 0.3, 0.6, 0.9};
  Index dim = 1;
  int critic_steps = 5000;
  Index critic_batch = 256;
  double critic_lr = 5e-4;
  std::vector<Index> critic_dims{32, 32};
};

struct DatasetTask {
  std::string path;
  data::Schema schema;
  data::SplitSpec split;
  // Cap on training rows after splitting (0 keeps all).
  Index train_subsample = 0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lotka_volterra;
  std::string label = "default";
  std::uint64_t seed = 0;
  subtraction::SubtractionConfig subtraction;
  mi::OracleConfig oracle;
  data::LvParams lotka_volterra;
  // Target and condition columns of the trajectory; for venn the target
  // followed by the two other variables.
  std::string target = "G";
  std::vector<std::string> condition{"S"};
  data::FairSynthConfig fair_synth;
  std::vector<double> lambdas{0.0, 0.5, 1.0, 2.0, 5.0};
  DatasetTask dataset;
  GaussianOracleTask gaussian;
};

struct ParseResult {
  ExperimentConfig config;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

// Reads typed values out of a toml table, recording type errors and keys
// that nothing consumed.
class Reader {
 public:
  Reader(const toml::table& root, std::vector<std::string>& violations) : root_(root), violations_(violations) {}

  const toml::table* table(const std::string& name) {
    seen_.insert(name);
    const auto* node = root_.get(name);
    if (!node) return nullptr;
    if (!node->is_table()) {
      violations_.push_back(name + ": expected a table");
      return nullptr;
    }
    return node->as_table();
  }

  template <typename T>
  void get(const toml::table* t, const std::string& section, const std::string& key, T& out) {
    const std::string path = section.empty() ? key : section + "." + key;
    seen_.insert(path);
    const toml::node* node = t ? t->get(key) : nullptr;
    if (!node) return;
    if constexpr (std::is_same_v<T, double>) {
      if (auto v = node->value<double>()) {
        out = *v;
        return;
      }
      violations_.push_back(path + ": expected a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (auto v = node->value<bool>()) {
        out = *v;
        return;
      }
      violations_.push_back(path + ": expected true or false");
    } else if constexpr (std::is_integral_v<T>) {
      if (node->is_integer()) {
        const auto v = node->as_integer()->get();
        if constexpr (std::is_unsigned_v<T>) {
          if (v < 0) {
            violations_.push_back(path + ": must be >= 0");
            return;
          }
        }
        out = static_cast<T>(v);
        return;
      }
      violations_.push_back(path + ": expected an integer");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (auto v = node->value<std::string>()) {
        out = *v;
        return;
      }
      violations_.push_back(path + ": expected a string");
    } else {
      read_array(node, path, out);
    }
  }

  // Keys present in the document but never read.
  void report_unknown(const toml::table& t, const std::string& prefix) {
    for (const auto& [k, node] : t) {
      const std::string path = prefix.empty() ? std::string(k.str()) : prefix + "." + std::string(k.str());
      if (!seen_.count(path)) {
        violations_.push_back(path + ": unknown key");
      } else if (node.is_table() && prefix.empty()) {
        report_unknown(*node.as_table(), path);
      }
    }
  }

 private:
  template <typename E>
  void read_array(const toml::node* node, const std::string& path, std::vector<E>& out) {
    const auto* arr = node->as_array();
    if (!arr) {
      violations_.push_back(path + ": expected an array");
      return;
    }
    std::vector<E> v;
    for (const auto& el : *arr) {
      if constexpr (std::is_same_v<E, std::string>) {
        if (auto s = el.value<std::string>()) {
          v.push_back(*s);
          continue;
        }
      } else if constexpr (std::is_integral_v<E>) {
        if (el.is_integer()) {
          v.push_back(static_cast<E>(el.as_integer()->get()));
          continue;
        }
      } else {
        if (auto d = el.value<double>()) {
          v.push_back(*d);
          continue;
        }
      }
      violations_.push_back(path + ": array has an element of the wrong type");
      return;
    }
    out = std::move(v);
  }

  template <typename E, std::size_t N>
  void read_array(const toml::node* node, const std::string& path, std::array<E, N>& out) {
    std::vector<E> v;
    read_array(node, path, v);
    if (v.empty()) return;
    if (v.size() != N) {
      violations_.push_back(path + ": expected " + std::to_string(N) + " values");
      return;
    }
    std::copy(v.begin(), v.end(), out.begin());
  }

  const toml::table& root_;
  std::vector<std::string>& violations_;
  std::set<std::string> seen_;
};

inline data::Schema default_schema(ExperimentKind kind) {
  if (kind == ExperimentKind::adult) return data::adult_schema();
  if (kind == ExperimentKind::covertype) return data::covtype_schema();
  return {};
}

inline bool uses_lotka_volterra(ExperimentKind k) { return k == ExperimentKind::lotka_volterra || k == ExperimentKind::venn; }
inline bool uses_fair_synth(ExperimentKind k) { return k == ExperimentKind::fair_synth || k == ExperimentKind::sweep; }
inline bool uses_dataset(ExperimentKind k) { return k == ExperimentKind::adult || k == ExperimentKind::covertype; }
inline bool uses_subtraction(ExperimentKind k) { return k != ExperimentKind::gaussian_oracle; }

inline void check_lv(const ExperimentConfig& c, std::vector<std::string>& v) {
  try {
    c.lotka_volterra.validate();
  } catch (const std::exception& e) {
    v.push_back(std::string("lotka_volterra: ") + e.what());
  }
  static const std::set<std::string> columns{"W", "S", "R", "G"};
  if (!columns.count(c.target)) v.push_back("lotka_volterra.target: must be one of W, S, R, G");
  std::set<std::string> used{c.target};
  for (const auto& n : c.condition) {
    if (!columns.count(n)) v.push_back("lotka_volterra.condition: '" + n + "' is not one of W, S, R, G");
    if (!used.insert(n).second) v.push_back("lotka_volterra.condition: '" + n + "' repeats a variable");
  }
  if (c.kind == ExperimentKind::venn && c.condition.size() != 2) {
    v.push_back("lotka_volterra.condition: venn needs exactly two other variables");
  }
  if (c.kind == ExperimentKind::lotka_volterra && c.condition.empty()) {
    v.push_back("lotka_volterra.condition: at least one condition variable is required");
  }
}

}  // namespace detail

// All violations are collected; nothing is written or created.
inline std::vector<std::string> violations(const ExperimentConfig& c) {
  std::vector<std::string> v;
  if (c.label.empty() || c.label.find('/') != std::string::npos || c.label == "." || c.label == "..") {
    v.push_back("label: must be a non-empty name without '/'");
  }
  if (detail::uses_subtraction(c.kind)) {
    for (const auto& s : c.subtraction.violations()) v.push_back("subtraction." + s);
  }
  try {
    c.oracle.validate();
  } catch (const std::exception& e) {
    v.push_back(std::string("oracle: ") + e.what());
  }
  if (detail::uses_lotka_volterra(c.kind)) detail::check_lv(c, v);
  if (detail::uses_fair_synth(c.kind)) {
    try {
      c.fair_synth.validate();
    } catch (const std::exception& e) {
      v.push_back(std::string("fair_synth: ") + e.what());
    }
  }
  if (c.kind == ExperimentKind::sweep) {
    if (c.lambdas.size() < 2) v.push_back("sweep.lambdas: need at least 2 values");
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
      if (c.lambdas[i] < 0) v.push_back("sweep.lambdas: values must be >= 0");
      if (i > 0 && !(c.lambdas[i] > c.lambdas[i - 1])) v.push_back("sweep.lambdas: must be strictly increasing");
    }
  }
  if (detail::uses_dataset(c.kind)) {
    const auto& d = c.dataset;
    if (d.path.empty()) {
      v.push_back("dataset.path: required for " + to_string(c.kind));
    } else if (!std::filesystem::is_regular_file(d.path)) {
      v.push_back("dataset.path: '" + d.path + "' is not a readable file");
    }
    if (d.schema.columns.empty()) v.push_back("dataset.columns: schema is empty");
    const auto count_role = [&](data::Role r) {
      return std::count_if(d.schema.columns.begin(), d.schema.columns.end(),
                           [&](const data::ColumnSchema& s) { return s.role == r; });
    };
    if (count_role(data::Role::target) != 1) v.push_back("dataset.columns: exactly one target column is required");
    if (count_role(data::Role::feature) < 1) v.push_back("dataset.columns: at least one feature column is required");
    const auto cond_role = c.kind == ExperimentKind::adult ? data::Role::protected_attr : data::Role::domain;
    if (count_role(cond_role) != 1) {
      v.push_back(std::string("dataset.columns: exactly one ") + data::to_string(cond_role) + " column is required");
    }
    if (d.split.mode == data::SplitSpec::Mode::iid) {
      if (d.split.train_n < 1) v.push_back("split.train_n: must be >= 1");
      if (d.split.test_n < 1) v.push_back("split.test_n: must be >= 1");
    } else {
      if (d.split.train_domains.empty()) v.push_back("split.train_domains: must not be empty");
      if (d.split.test_domains.empty()) v.push_back("split.test_domains: must not be empty");
      for (const auto& t : d.split.train_domains) {
        if (std::find(d.split.test_domains.begin(), d.split.test_domains.end(), t) != d.split.test_domains.end()) {
          v.push_back("split: domain '" + t + "' is in both train_domains and test_domains");
        }
      }
    }
    if (d.train_subsample < 0) v.push_back("split.train_subsample: must be >= 0");
  }
  if (c.kind == ExperimentKind::gaussian_oracle) {
    const auto& g = c.gaussian;
    if (g.n < 10) v.push_back("gaussian_oracle.n: must be >= 10");
    if (g.rhos.empty()) v.push_back("gaussian_oracle.rhos: must not be empty");
    if (g.dim < 1) v.push_back("gaussian_oracle.dim: must be >= 1");
    for (double r : g.rhos) {
      if (!(std::abs(r) < 1.0)) v.push_back("gaussian_oracle.rhos: |rho| must be < 1");
    }
    if (g.critic_steps < 1) v.push_back("gaussian_oracle.critic_steps: must be >= 1");
    if (g.critic_batch < 2) v.push_back("gaussian_oracle.critic_batch: must be >= 2");
    if (!(g.critic_lr > 0)) v.push_back("gaussian_oracle.critic_lr: must be > 0");
  }
  return v;
}

inline ParseResult parse_config(const toml::table& root) {
  ParseResult out;
  auto& c = out.config;
  auto& v = out.violations;
  detail::Reader r(root, v);

  std::string kind;
  r.get(&root, "", "kind", kind);
  if (kind.empty()) {
    v.push_back("kind: required (one of lotka_volterra, venn, fair_synth, adult, covertype, gaussian_oracle, sweep)");
  } else if (auto k = kind_from_string(kind)) {
    c.kind = *k;
  } else {
    v.push_back("kind: unknown experiment '" + kind + "'");
  }
  r.get(&root, "", "label", c.label);
  r.get(&root, "", "seed", c.seed);

  if (c.kind == ExperimentKind::venn) c.condition = {"S", "W"};
  if (c.kind == ExperimentKind::adult || c.kind == ExperimentKind::covertype) {
    c.subtraction.z_dim = 50;
    c.dataset.schema = detail::default_schema(c.kind);
  }
  if (c.kind == ExperimentKind::adult) c.dataset.split = data::SplitSpec::iid(15000, 17621, RngSeed{0});
  if (c.kind == ExperimentKind::covertype) {
    c.dataset.split = data::SplitSpec::by_domain("wilderness_area", {"1", "2", "3"}, {"4"});
    c.dataset.train_subsample = 20000;
  }

  {
    const auto* t = r.table("subtraction");
    auto& s = c.subtraction;
    r.get(t, "subtraction", "z_dim", s.z_dim);
    r.get(t, "subtraction", "lambda", s.lambda);
    r.get(t, "subtraction", "n1", s.n1);
    r.get(t, "subtraction", "n2", s.n2);
    r.get(t, "subtraction", "n3", s.n3);
    r.get(t, "subtraction", "n4", s.n4);
    r.get(t, "subtraction", "batch_size", s.batch_size);
    r.get(t, "subtraction", "lr_generator", s.lr_generator);
    r.get(t, "subtraction", "lr_discriminator", s.lr_discriminator);
    r.get(t, "subtraction", "lr_estimator", s.lr_estimator);
    r.get(t, "subtraction", "generator_dims", s.generator_dims);
    r.get(t, "subtraction", "discriminator_dims", s.discriminator_dims);
    r.get(t, "subtraction", "tau", s.tau);
    std::string act = to_string(s.activation);
    r.get(t, "subtraction", "activation", act);
    try {
      s.activation = activation_from_string(act);
    } catch (const std::exception&) {
      v.push_back("subtraction.activation: must be relu or tanh");
    }
    double clip = 0.0;
    r.get(t, "subtraction", "clip_norm", clip);
    if (clip != 0.0) s.clip_norm = clip;
    s.seed = RngSeed{c.seed};
  }
  {
    const auto* t = r.table("oracle");
    r.get(t, "oracle", "ksg_k", c.oracle.ksg_k);
    r.get(t, "oracle", "plugin_bins", c.oracle.plugin_bins);
    r.get(t, "oracle", "max_samples", c.oracle.max_samples);
    c.oracle.seed = c.seed;
  }
  {
    const auto* t = r.table("lotka_volterra");
    auto& p = c.lotka_volterra;
    for (auto [k, ptr] : {std::pair{"w0", &p.w0}, std::pair{"s0", &p.s0}, std::pair{"r0", &p.r0},
                          std::pair{"g0", &p.g0}, std::pair{"delta_t", &p.delta_t}}) {
      r.get(t, "lotka_volterra", k, *ptr);
    }
    r.get(t, "lotka_volterra", "a", p.a);
    r.get(t, "lotka_volterra", "b", p.b);
    r.get(t, "lotka_volterra", "c", p.c);
    r.get(t, "lotka_volterra", "d", p.d);
    r.get(t, "lotka_volterra", "steps", p.steps);
    r.get(t, "lotka_volterra", "target", c.target);
    r.get(t, "lotka_volterra", "condition", c.condition);
  }
  {
    const auto* t = r.table("fair_synth");
    auto& f = c.fair_synth;
    r.get(t, "fair_synth", "n", f.n);
    r.get(t, "fair_synth", "country_prior", f.country_prior);
    r.get(t, "fair_synth", "w_mean", f.w_mean);
    r.get(t, "fair_synth", "w_std", f.w_std);
    r.get(t, "fair_synth", "v_mean", f.v_mean);
    r.get(t, "fair_synth", "v_std", f.v_std);
  }
  {
    const auto* t = r.table("sweep");
    r.get(t, "sweep", "lambdas", c.lambdas);
  }
  {
    const auto* t = r.table("dataset");
    auto& d = c.dataset;
    r.get(t, "dataset", "path", d.path);
    r.get(t, "dataset", "missing_tokens", d.schema.missing_tokens);
    const toml::node* cols = t ? t->get("columns") : nullptr;
    if (cols) {
      r.get(t, "dataset", "columns", kind);  // mark as seen; parsed below
      v.erase(std::remove(v.begin(), v.end(), std::string("dataset.columns: expected a string")), v.end());
      const auto* arr = cols->as_array();
      if (!arr) {
        v.push_back("dataset.columns: expected an array of tables");
      } else {
        d.schema.columns.clear();
        for (const auto& el : *arr) {
          const auto* ct = el.as_table();
          if (!ct) {
            v.push_back("dataset.columns: expected an array of tables");
            break;
          }
          data::ColumnSchema cs;
          cs.name = ct->get_as<std::string>("name") ? ct->get_as<std::string>("name")->get() : "";
          if (cs.name.empty()) v.push_back("dataset.columns: every column needs a name");
          try {
            if (auto k = ct->get_as<std::string>("kind")) cs.kind = data::column_kind_from_string(k->get());
            if (auto ro = ct->get_as<std::string>("role")) cs.role = data::role_from_string(ro->get());
          } catch (const std::exception& e) {
            v.push_back("dataset.columns[" + cs.name + "]: " + e.what());
          }
          if (const auto* cats = ct->get_as<toml::array>("categories")) {
            for (const auto& x : *cats) {
              if (auto s = x.value<std::string>()) cs.categories.push_back(*s);
            }
          }
          for (const auto& [ck, cv] : *ct) {
            const std::string key(ck.str());
            if (key != "name" && key != "kind" && key != "role" && key != "categories") {
              v.push_back("dataset.columns[" + cs.name + "]." + key + ": unknown key");
            }
          }
          d.schema.columns.push_back(std::move(cs));
        }
      }
    }
  }
  {
    const auto* t = r.table("split");
    auto& s = c.dataset.split;
    std::string mode = s.mode == data::SplitSpec::Mode::iid ? "iid" : "by_domain";
    r.get(t, "split", "mode", mode);
    if (mode == "iid") {
      s.mode = data::SplitSpec::Mode::iid;
    } else if (mode == "by_domain") {
      s.mode = data::SplitSpec::Mode::by_domain;
    } else {
      v.push_back("split.mode: must be iid or by_domain");
    }
    r.get(t, "split", "train_n", s.train_n);
    r.get(t, "split", "test_n", s.test_n);
    r.get(t, "split", "domain_column", s.domain_column);
    r.get(t, "split", "train_domains", s.train_domains);
    r.get(t, "split", "test_domains", s.test_domains);
    r.get(t, "split", "train_subsample", c.dataset.train_subsample);
    s.seed = derive_seed(RngSeed{c.seed}, 101);
  }
  {
    const auto* t = r.table("gaussian_oracle");
    auto& g = c.gaussian;
    r.get(t, "gaussian_oracle", "n", g.n);
    r.get(t, "gaussian_oracle", "rhos", g.rhos);
    r.get(t, "gaussian_oracle", "dim", g.dim);
    r.get(t, "gaussian_oracle", "critic_steps", g.critic_steps);
    r.get(t, "gaussian_oracle", "critic_batch", g.critic_batch);
    r.get(t, "gaussian_oracle", "critic_lr", g.critic_lr);
    r.get(t, "gaussian_oracle", "critic_dims", g.critic_dims);
  }
  r.report_unknown(root, "");
  for (auto& s : violations(c)) v.push_back(std::move(s));
  return out;
}

inline ParseResult parse_config_text(const std::string& text, const std::string& source = "config") {
  try {
    return parse_config(toml::parse(text, source));
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "syntax error at line " << e.source().begin.line << ": " << e.description();
    ParseResult r;
    r.violations.push_back(msg.str());
    return r;
  }
}

class ConfigFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

// Every setting the run used, defaults included, for the kind's sections only.
inline toml::table resolved_table(const ExperimentConfig& c) {
  const auto dims = [](const std::vector<Index>& d) {
    toml::array a;
    for (Index x : d) a.push_back(static_cast<std::int64_t>(x));
    return a;
  };
  const auto reals = [](auto const& xs) {
    toml::array a;
    for (double x : xs) a.push_back(x);
    return a;
  };
  const auto strings = [](const std::vector<std::string>& xs) {
    toml::array a;
    for (const auto& x : xs) a.push_back(x);
    return a;
  };
  toml::table t;
  t.insert("kind", to_string(c.kind));
  t.insert("label", c.label);
  t.insert("seed", static_cast<std::int64_t>(c.seed));
  if (detail::uses_subtraction(c.kind)) {
    const auto& s = c.subtraction;
    toml::table st;
    st.insert("z_dim", static_cast<std::int64_t>(s.z_dim));
    st.insert("lambda", s.lambda);
    st.insert("n1", s.n1);
    st.insert("n2", s.n2);
    st.insert("n3", s.n3);
    st.insert("n4", s.n4);
    st.insert("batch_size", static_cast<std::int64_t>(s.batch_size));
    st.insert("lr_generator", s.lr_generator);
    st.insert("lr_discriminator", s.lr_discriminator);
    st.insert("lr_estimator", s.lr_estimator);
    st.insert("generator_dims", dims(s.generator_dims));
    st.insert("discriminator_dims", dims(s.discriminator_dims));
    st.insert("activation", to_string(s.activation));
    st.insert("tau", s.tau);
    st.insert("clip_norm", s.clip_norm.value_or(0.0));
    t.insert("subtraction", st);
  }
  toml::table ot;
  ot.insert("ksg_k", c.oracle.ksg_k);
  ot.insert("plugin_bins", c.oracle.plugin_bins);
  ot.insert("max_samples", static_cast<std::int64_t>(c.oracle.max_samples));
  t.insert("oracle", ot);
  if (detail::uses_lotka_volterra(c.kind)) {
    const auto& p = c.lotka_volterra;
    toml::table lt;
    lt.insert("w0", p.w0);
    lt.insert("s0", p.s0);
    lt.insert("r0", p.r0);
    lt.insert("g0", p.g0);
    lt.insert("a", reals(p.a));
    lt.insert("b", reals(p.b));
    lt.insert("c", reals(p.c));
    lt.insert("d", reals(p.d));
    lt.insert("delta_t", p.delta_t);
    lt.insert("steps", static_cast<std::int64_t>(p.steps));
    lt.insert("target", c.target);
    lt.insert("condition", strings(c.condition));
    t.insert("lotka_volterra", lt);
  }
  if (detail::uses_fair_synth(c.kind)) {
    const auto& f = c.fair_synth;
    toml::table ft;
    ft.insert("n", static_cast<std::int64_t>(f.n));
    ft.insert("country_prior", reals(f.country_prior));
    ft.insert("w_mean", reals(f.w_mean));
    ft.insert("w_std", reals(f.w_std));
    ft.insert("v_mean", f.v_mean);
    ft.insert("v_std", f.v_std);
    t.insert("fair_synth", ft);
  }
  if (c.kind == ExperimentKind::sweep) {
    toml::table sw;
    sw.insert("lambdas", reals(c.lambdas));
    t.insert("sweep", sw);
  }
  if (detail::uses_dataset(c.kind)) {
    const auto& d = c.dataset;
    toml::table dt;
    dt.insert("path", d.path);
    dt.insert("missing_tokens", strings(d.schema.missing_tokens));
    toml::array cols;
    for (const auto& col : d.schema.columns) {
      toml::table ct;
      ct.insert("name", col.name);
      ct.insert("kind", data::to_string(col.kind));
      ct.insert("role", data::to_string(col.role));
      if (!col.categories.empty()) ct.insert("categories", strings(col.categories));
      cols.push_back(ct);
    }
    dt.insert("columns", cols);
    t.insert("dataset", dt);
    toml::table sp;
    const bool iid = d.split.mode == data::SplitSpec::Mode::iid;
    sp.insert("mode", iid ? "iid" : "by_domain");
    if (iid) {
      sp.insert("train_n", static_cast<std::int64_t>(d.split.train_n));
      sp.insert("test_n", static_cast<std::int64_t>(d.split.test_n));
    } else {
      sp.insert("domain_column", d.split.domain_column);
      sp.insert("train_domains", strings(d.split.train_domains));
      sp.insert("test_domains", strings(d.split.test_domains));
    }
    sp.insert("train_subsample", static_cast<std::int64_t>(d.train_subsample));
    t.insert("split", sp);
  }
  if (c.kind == ExperimentKind::gaussian_oracle) {
    const auto& g = c.gaussian;
    toml::table gt;
    gt.insert("n", static_cast<std::int64_t>(g.n));
    gt.insert("rhos", reals(g.rhos));
    gt.insert("dim", static_cast<std::int64_t>(g.dim));
    gt.insert("critic_steps", g.critic_steps);
    gt.insert("critic_batch", static_cast<std::int64_t>(g.critic_batch));
    gt.insert("critic_lr", g.critic_lr);
    gt.insert("critic_dims", dims(g.critic_dims));
    t.insert("gaussian_oracle", gt);
  }
  return t;
}

inline std::string resolved_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << resolved_table(c) << '\n';
  return os.str();
}

}  // namespace infosub::cli
