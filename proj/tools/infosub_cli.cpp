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

// Command-line runner: `infosub run --config FILE` and
// `infosub validate --config FILE`.

#include <cstdlib>
#include <exception>
#include <iostream>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "CLI11.hpp"
#include "infosub/cli/config.hpp"
#include "infosub/cli/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

void print_violations(const std::string& path, const std::vector<std::string>& v) {
  std::cerr << path << ": " << v.size() << (v.size() == 1 ? " problem" : " problems") << '\n';
  for (const auto& s : v) std::cerr << "  " << s << '\n';
}

}  // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Training reallocates many mid-sized matrices; keep them off mmap and
  // stop the heap from being trimmed after every release.
  mallopt(M_MMAP_THRESHOLD, 64 << 20);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  CLI::App app{"Information subtraction experiments"};
  app.require_subcommand(1);
  std::string config_path, output;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("--config", config_path, "Experiment config (TOML)")->required();
  run->add_option("--output", output, std::string("Output root (default $") + infosub::cli::kOutputRootEnv + " or ./runs)");
  run->add_option("--seed", seed, "Override the master seed");

  auto* validate = app.add_subcommand("validate", "Check a config file and list every problem");
  validate->add_option("--config", config_path, "Experiment config (TOML)")->required();
  validate->add_option("--seed", seed, "Override the master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  infosub::cli::ParseResult parsed;
  try {
    parsed = infosub::cli::parse_config_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (seed && parsed.ok()) {
    // Reparse so every seed derived from the master seed follows the override.
    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto table = toml::parse(buf.str(), config_path);
    table.insert_or_assign("seed", static_cast<std::int64_t>(*seed));
    parsed = infosub::cli::parse_config(table);
  }
  if (!parsed.ok()) {
    print_violations(config_path, parsed.violations);
    return kExitInvalid;
  }
  if (validate->parsed()) {
    std::cout << config_path << ": ok (" << infosub::cli::to_string(parsed.config.kind) << ")\n";
    return kExitOk;
  }

  try {
    const std::string root = output.empty() ? infosub::cli::default_output_root() : output;
    const auto result = infosub::cli::run_experiment(parsed.config, root, &std::cerr);
    std::ifstream text(result.directory / "report.txt");
    std::cout << text.rdbuf();
    std::cout << "artifacts: " << result.directory.string() << '\n';
  } catch (const infosub::subtraction::ConfigError& e) {
    print_violations(config_path, e.violations());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
