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

// Executes one experiment end to end and writes its artifacts under
// <root>/<kind>/<label>/.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "infosub/cli/config.hpp"
#include "infosub/data/csv.hpp"
#include "infosub/data/lotka_volterra.hpp"
#include "infosub/data/split.hpp"
#include "infosub/data/synthetic.hpp"
#include "infosub/eval/fairness.hpp"
#include "infosub/eval/info_report.hpp"
#include "infosub/eval/render.hpp"
#include "infosub/eval/sweep.hpp"
#include "infosub/mi/ksg.hpp"
#include "infosub/mi/neural.hpp"
#include "infosub/numerics/checkpoint.hpp"
#include "infosub/subtraction/unbiased.hpp"
#include "infosub/subtraction/venn.hpp"

namespace infosub::cli {

using eval::Json;

struct RunResult {
  std::filesystem::path directory;
  Json report;
};

namespace detail {

namespace fs = std::filesystem;

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

inline std::string trace_text(const subtraction::DiagnosticsTrace& t) {
  std::ostringstream os;
  t.write_csv(os);
  return os.str();
}

// Several runs in one file: a leading `run` column names the run per row.
inline std::string multi_trace_text(const std::vector<std::pair<std::string, const subtraction::DiagnosticsTrace*>>& runs) {
  std::string out;
  bool header = true;
  for (const auto& [name, trace] : runs) {
    std::istringstream in(trace_text(*trace));
    std::string line;
    std::getline(in, line);
    if (header) out += "run," + line + "\n";
    header = false;
    while (std::getline(in, line)) out += name + "," + line + "\n";
  }
  return out;
}

inline void save_subtractor(const fs::path& dir, const std::string& prefix, const subtraction::Subtractor& s) {
  save_checkpoint(dir / (prefix + "generator.ckpt"), s.generator);
  save_checkpoint(dir / (prefix + "reconstructor.ckpt"), s.reconstructor);
  save_checkpoint(dir / (prefix + "critic_full.ckpt"), s.critic_full.model);
  save_checkpoint(dir / (prefix + "critic_leak.ckpt"), s.critic_leak.model);
}

class ProgressLog {
 public:
  ProgressLog(std::ostream* os, std::string label, int epochs) : os_(os), label_(std::move(label)), epochs_(epochs) {}

  subtraction::EpochCallback callback() {
    if (!os_) return {};
    return [this](const subtraction::TraceRecord& r) {
      if (r.epoch == 0) ++run_;
      char buf[256];
      std::snprintf(buf, sizeof buf, "[%s] run %d epoch %d/%d %s full=%.4f leak=%.4f nats", label_.c_str(), run_,
                    r.epoch + 1, epochs_, subtraction::to_string(r.stage), r.mi_full_nats, r.mi_leak_nats);
      *os_ << buf << '\n';
    };
  }

  void note(const std::string& msg) {
    if (os_) *os_ << '[' << label_ << "] " << msg << '\n';
  }

 private:
  std::ostream* os_;
  std::string label_;
  int epochs_;
  int run_ = 0;
};

inline Matrix labels_matrix(const std::vector<int>& labels) {
  Matrix m(static_cast<Index>(labels.size()), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) m(static_cast<Index>(i), 0) = labels[i];
  return m;
}

inline Matrix one_hot(const std::vector<int>& labels, int width) {
  Matrix m = Matrix::Zero(static_cast<Index>(labels.size()), width);
  for (std::size_t i = 0; i < labels.size(); ++i) m(static_cast<Index>(i), labels[i]) = 1.0;
  return m;
}

// Synthetic inputs and tabular splits, prepared before any directory exists.
struct Inputs {
  data::Dataset synthetic;
  data::Dataset train, test;
  std::vector<std::string> warnings;
};

inline Inputs prepare_inputs(const ExperimentConfig& c) {
  Inputs in;
  if (uses_lotka_volterra(c.kind)) {
    in.synthetic = data::simulate_lotka_volterra(c.lotka_volterra);
  } else if (uses_fair_synth(c.kind)) {
    in.synthetic = data::gen_fair_synthetic(c.fair_synth, derive_seed(RngSeed{c.seed}, 201));
  } else if (uses_dataset(c.kind)) {
    const auto full = data::load_csv_dataset(c.dataset.path, c.dataset.schema);
    in.warnings = full.warnings;
    auto parts = data::split(full, c.dataset.split);
    in.train = std::move(parts.train);
    in.test = std::move(parts.test);
    const Index cap = c.dataset.train_subsample;
    if (cap > 0 && cap < in.train.rows()) {
      Rng rng(derive_seed(RngSeed{c.seed}, 102));
      auto idx = rng.sample_without_replacement(in.train.rows(), cap);
      std::sort(idx.begin(), idx.end());
      in.train = in.train.take_rows(idx);
    }
    data::standardize_continuous(in.train, in.test);
  }
  return in;
}

inline std::string name_of_role(const data::Dataset& d, data::Role role) {
  const auto names = d.names_with_role(role);
  if (names.size() != 1) throw std::runtime_error(std::string("dataset needs exactly one ") + data::to_string(role) + " column");
  return names.front();
}

inline Json run_single(const ExperimentConfig& c, const Inputs& in, const fs::path& dir, ProgressLog& log,
                       std::string& text, std::string& trace) {
  const auto& d = in.synthetic;
  std::string xname, yname;
  Matrix x, y;
  if (c.kind == ExperimentKind::lotka_volterra) {
    yname = c.target;
    for (const auto& n : c.condition) xname += (xname.empty() ? "" : ",") + n;
    x = d.columns(c.condition);
    y = d.column(c.target);
  } else {
    xname = "X";
    yname = "Y";
    x = d.column("X");
    y = d.column("Y");
  }
  const auto run = subtraction::train_information_subtraction(c.subtraction, x, y, log.callback());
  const Matrix z = subtraction::generate_representation(run, y);
  save_subtractor(dir / "checkpoints", "", run);
  trace = trace_text(run.trace);
  const auto report = eval::information_report(z, x, y, c.oracle);
  std::ostringstream os;
  eval::render_info_table(os, report, xname, yname);
  text = os.str();
  return Json{{"x", xname}, {"y", yname}, {"info", eval::to_json(report)}};
}

inline Json run_venn(const ExperimentConfig& c, const Inputs& in, const fs::path& dir, ProgressLog& log,
                     std::string& text, std::string& trace) {
  const auto& d = in.synthetic;
  const std::array<std::string, 3> names{c.target, c.condition[0], c.condition[1]};
  const auto v = subtraction::venn_decompose(d.column(names[0]), d.column(names[1]), d.column(names[2]), c.subtraction,
                                             c.oracle, names, log.callback());
  std::vector<std::pair<std::string, const subtraction::DiagnosticsTrace*>> runs;
  for (const auto& s : v.sectors) {
    save_subtractor(dir / "checkpoints", s.name + "_", s.run);
    runs.emplace_back(s.name, &s.run.trace);
  }
  trace = multi_trace_text(runs);
  std::ostringstream os;
  eval::render_venn_table(os, v);
  text = os.str();
  return Json{{"venn", eval::to_json(v)}};
}

inline Json run_sweep(const ExperimentConfig& c, const Inputs& in, const fs::path& dir, ProgressLog& log,
                      std::string& text, std::string& trace) {
  const Matrix x = in.synthetic.column("X");
  const Matrix y = in.synthetic.column("Y");
  const auto sweep = eval::lambda_sweep(c.subtraction, c.lambdas, x, y, c.oracle, log.callback());
  std::vector<std::pair<std::string, const subtraction::DiagnosticsTrace*>> runs;
  for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
    const std::string name = "lambda" + std::to_string(i);
    save_subtractor(dir / "checkpoints", name + "_", sweep.runs[i]);
    runs.emplace_back(std::to_string(i), &sweep.runs[i].trace);
  }
  trace = multi_trace_text(runs);
  std::ofstream csv(dir / "sweep.csv");
  sweep.write_csv(csv);
  std::ostringstream os;
  eval::render_sweep_table(os, sweep);
  text = os.str();
  return Json{{"sweep", eval::to_json(sweep)}};
}

// Adult (fairness against a protected attribute) and CoverType (a held-out
// domain) share one pipeline: classifiers on {X,C}, X, Z and {X,Z}.
inline Json run_tabular(const ExperimentConfig& c, const Inputs& in, const fs::path& dir, ProgressLog& log,
                        std::string& text, std::string& trace) {
  const bool adult = c.kind == ExperimentKind::adult;
  const auto& tr = in.train;
  const auto& te = in.test;
  const std::string target = name_of_role(tr, data::Role::target);
  const std::string cond = name_of_role(tr, adult ? data::Role::protected_attr : data::Role::domain);
  const int num_classes = static_cast<int>(tr.group(target).categories.size());
  const int cond_width = static_cast<int>(tr.group(cond).categories.size());

  const Matrix x_tr = tr.role_matrix(data::Role::feature), x_te = te.role_matrix(data::Role::feature);
  const auto c_tr_labels = tr.labels(cond), c_te_labels = te.labels(cond);
  const Matrix c_tr = adult ? labels_matrix(c_tr_labels) : one_hot(c_tr_labels, cond_width);
  const Matrix c_te = adult ? labels_matrix(c_te_labels) : one_hot(c_te_labels, cond_width);
  const auto y_tr = tr.labels(target), y_te = te.labels(target);

  const auto opts = subtraction::predictor_options(c.subtraction);
  const auto unbiased = subtraction::train_unbiased_predictor(c.subtraction, x_tr, c_tr, y_tr, num_classes, opts,
                                                              log.callback());
  const Matrix z_te = subtraction::generate_representation(unbiased.subtractor, x_te);
  save_subtractor(dir / "checkpoints", "", unbiased.subtractor);
  save_checkpoint(dir / "checkpoints" / "predictor_Z.ckpt", unbiased.predictor.model);
  trace = trace_text(unbiased.subtractor.trace);

  struct FeatureSet {
    std::string name;
    Matrix train, test;
  };
  const Matrix xc_tr = hconcat({&x_tr, &c_tr}), xc_te = hconcat({&x_te, &c_te});
  const Matrix xz_tr = hconcat({&x_tr, &unbiased.z}), xz_te = hconcat({&x_te, &z_te});
  std::vector<FeatureSet> sets{{"X,C", xc_tr, xc_te}, {"X", x_tr, x_te}};
  if (!adult) sets.push_back({"X,Z", xz_tr, xz_te});

  std::vector<std::pair<std::string, std::vector<int>>> predictions;
  for (const auto& s : sets) {
    log.note("training predictor on {" + s.name + "}");
    const auto clf = subtraction::train_classifier(s.train, y_tr, num_classes, opts);
    std::string file = s.name;
    std::replace(file.begin(), file.end(), ',', '_');
    save_checkpoint(dir / "checkpoints" / ("predictor_" + file + ".ckpt"), clf.model);
    predictions.emplace_back(s.name, subtraction::predict_labels(clf, s.test));
  }
  predictions.emplace_back("Z", subtraction::predict_labels(unbiased.predictor, z_te));
  if (!adult) std::swap(predictions[2], predictions[3]);  // {X,C}, X, Z, {X,Z}

  Json report{{"condition", cond}, {"target", target}, {"train_rows", tr.rows()}, {"test_rows", te.rows()}};
  report["warnings"] = in.warnings;
  std::ostringstream os;
  if (adult) {
    std::vector<std::pair<std::string, eval::FairnessReport>> rows;
    Json fj = Json::object();
    for (const auto& [name, p] : predictions) {
      rows.emplace_back("{" + name + "}", eval::fairness_metrics(p, y_te, c_te_labels, num_classes));
      fj[name] = eval::to_json(rows.back().second);
    }
    report["fairness"] = fj;
    eval::render_fairness_table(os, rows);
    const auto info = eval::information_report(z_te, c_te, x_te, c.oracle);
    report["info"] = eval::to_json(info);
    os << '\n';
    eval::render_info_table(os, info, "C", "X");
  } else {
    std::vector<std::pair<std::string, double>> rows;
    Json aj = Json::object();
    for (const auto& [name, p] : predictions) {
      rows.emplace_back("{" + name + "}", subtraction::accuracy(p, y_te));
      aj[name] = rows.back().second;
    }
    report["accuracy"] = aj;
    eval::render_accuracy_table(os, rows);
  }
  text = os.str();
  return report;
}

inline Json run_gaussian(const ExperimentConfig& c, ProgressLog& log, std::string& text, std::string& trace) {
  const auto& g = c.gaussian;
  const RngSeed base{c.seed};
  std::ostringstream tr;
  tr << "rho,step,smile_nats\n";
  std::vector<std::vector<std::string>> rows{{"rho", "analytic", "KSG", "SMILE"}};
  Json points = Json::array();
  for (std::size_t i = 0; i < g.rhos.size(); ++i) {
    const double rho = g.rhos[i];
    log.note("rho " + eval::fixed2(rho));
    const auto [a, b] = data::gen_correlated_gaussians(g.n, rho, g.dim, derive_seed(base, 300 + i));
    const double ksg = mi::ksg_mi(a, b, c.oracle.ksg_k).value_nats;
    auto critic = mi::Critic::make({{"a", g.dim}, {"b", g.dim}}, 1, g.critic_dims, Activation::relu,
                                   derive_seed(base, 400 + i));
    mi::CriticFitOptions fo;
    fo.steps = g.critic_steps;
    fo.batch_size = std::min(g.critic_batch, g.n);
    fo.learning_rate = g.critic_lr;
    fo.seed = derive_seed(base, 500 + i);
    const auto steps = mi::fit_critic(critic, a, b, fo);
    char buf[64];
    for (std::size_t s = 0; s < steps.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%.17g", steps[s]);
      tr << eval::fixed2(rho) << ',' << s << ',' << buf << '\n';
    }
    const double smile = mi::evaluate_critic(critic, a, b, fo.tau, derive_seed(base, 600 + i)).value_nats;
    const double truth = data::analytic_gaussian_mi(rho, g.dim);
    points.push_back(Json{{"rho", rho}, {"analytic_nats", truth}, {"ksg_nats", ksg}, {"smile_nats", smile}});
    rows.push_back({eval::fixed2(rho), eval::fixed2(truth), eval::fixed2(ksg), eval::fixed2(smile)});
  }
  trace = tr.str();
  std::ostringstream os;
  eval::detail::print_table(os, rows);
  text = os.str();
  return Json{{"units", "nats"}, {"points", points}};
}

}  // namespace detail

inline std::filesystem::path run_directory(const ExperimentConfig& c, const std::filesystem::path& root) {
  return root / to_string(c.kind) / c.label;
}

// Throws subtraction::ConfigError before touching the filesystem if the
// config has violations.
inline RunResult run_experiment(const ExperimentConfig& c, const std::filesystem::path& root,
                                std::ostream* progress = nullptr) {
  if (auto v = violations(c); !v.empty()) throw subtraction::ConfigError(std::move(v));
  const auto in = detail::prepare_inputs(c);

  RunResult out;
  out.directory = run_directory(c, root);
  std::filesystem::create_directories(out.directory / "checkpoints");
  detail::write_text(out.directory / "config.resolved", resolved_text(c));
  if (detail::uses_lotka_volterra(c.kind) || detail::uses_fair_synth(c.kind)) {
    in.synthetic.write_csv((out.directory / "data.csv").string());
  }

  detail::ProgressLog log(progress, c.label, c.subtraction.n2);
  std::string text, trace;
  Json body;
  switch (c.kind) {
    case ExperimentKind::lotka_volterra:
    case ExperimentKind::fair_synth:
      body = detail::run_single(c, in, out.directory, log, text, trace);
      break;
    case ExperimentKind::venn:
      body = detail::run_venn(c, in, out.directory, log, text, trace);
      break;
    case ExperimentKind::sweep:
      body = detail::run_sweep(c, in, out.directory, log, text, trace);
      break;
    case ExperimentKind::adult:
    case ExperimentKind::covertype:
      body = detail::run_tabular(c, in, out.directory, log, text, trace);
      break;
    case ExperimentKind::gaussian_oracle:
      body = detail::run_gaussian(c, log, text, trace);
      break;
  }
  out.report = Json{{"kind", to_string(c.kind)}, {"label", c.label}, {"seed", c.seed}};
  for (auto it = body.begin(); it != body.end(); ++it) out.report[it.key()] = it.value();
  detail::write_text(out.directory / "trace.csv", trace);
  detail::write_text(out.directory / "report.json", out.report.dump(2) + "\n");
  detail::write_text(out.directory / "report.txt", text);
  return out;
}

}  // namespace infosub::cli
