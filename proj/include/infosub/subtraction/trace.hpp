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
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infosub::subtraction {

enum class Stage { pretrain, subtract };

inline const char* to_string(Stage s) { return s == Stage::pretrain ? "pretrain" : "subtract"; }

// One row per epoch. recon_loss is only defined while pretraining and l2
// only while subtracting; undefined cells are written as empty fields.
struct TraceRecord {
  int epoch = 0;
  Stage stage = Stage::pretrain;
  std::optional<double> recon_loss;
  double mi_full_nats = 0.0;
  double mi_leak_nats = 0.0;
  std::optional<double> l2;
};

struct DiagnosticsTrace {
  std::vector<TraceRecord> records;

  std::size_t size() const { return records.size(); }

  void write_csv(std::ostream& os) const {
    os << "epoch,stage,recon_loss,mi_full_nats,mi_leak_nats,l2\n";
    const auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    for (const auto& r : records) {
      os << r.epoch << ',' << to_string(r.stage) << ',' << (r.recon_loss ? num(*r.recon_loss) : "") << ','
         << num(r.mi_full_nats) << ',' << num(r.mi_leak_nats) << ',' << (r.l2 ? num(*r.l2) : "") << '\n';
    }
  }

  void write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_csv(os);
  }
};

}  // namespace infosub::subtraction
