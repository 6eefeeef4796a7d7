// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The secout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: one subcommand per built-in figure sweep plus a
// generic `sweep --config FILE`. Writes CSV to stdout or --out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "secout/errors.hpp"
#include "secout/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAllFailed = 3;

struct Overrides {
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 1;
  unsigned mc_workers = 1;
  std::uint64_t chunk_size = 1u << 16;
  bool no_timing = false;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--samples", o.samples, "Monte-Carlo draws per point and cell");
  cmd->add_option("--seed", o.seed, "64-bit seed for the Monte-Carlo streams");
  cmd->add_option("--out", o.out, "CSV destination (default: stdout)");
  cmd->add_option("--workers", o.workers, "sweep points evaluated concurrently")->check(CLI::PositiveNumber);
  cmd->add_option("--mc-workers", o.mc_workers, "threads per Monte-Carlo estimate")->check(CLI::PositiveNumber);
  cmd->add_option("--chunk-size", o.chunk_size, "draws per Monte-Carlo chunk")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-timing", o.no_timing, "leave wall_time_ms empty for byte-stable output");
}

int run(secout::SweepSpec spec, const Overrides& o) {
  if (o.samples) spec.mc_samples = *o.samples;
  if (o.seed) spec.seed = *o.seed;
  spec.validate();

  secout::RunOptions options;
  options.workers = o.workers;
  options.record_timing = !o.no_timing;
  options.mc.workers = o.mc_workers;
  options.mc.chunk_size = o.chunk_size;
  const auto rows = secout::run_sweep(spec, options);

  if (o.out.empty()) {
    secout::emit_csv(rows, std::cout);
  } else {
    secout::emit_csv(rows, std::filesystem::path(o.out));
  }

  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (r.failed()) {
      ++failed;
      std::cerr << "secout: " << r.scheme << ' ' << r.method << " at " << r.axis_value << ": " << r.error << '\n';
    }
  }
  if (failed == rows.size()) return kExitAllFailed;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy outage sweeps for macro/small-cell spectrum sharing"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string chosen;
  for (std::string_view name : secout::preset_names()) {
    CLI::App* cmd = app.add_subcommand(std::string(name), "run the built-in " + std::string(name) + " sweep");
    add_common_options(cmd, overrides);
    cmd->callback([&chosen, name] { chosen = std::string(name); });
  }
  std::string config_path;
  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep described by a config file");
  sweep->add_option("--config", config_path, "config file")->required();
  add_common_options(sweep, overrides);
  sweep->callback([&chosen] { chosen = "sweep"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    secout::SweepSpec spec;
    if (chosen == "sweep") {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "secout: cannot read config '" << config_path << "'\n";
        return kExitConfig;
      }
      std::ostringstream text;
      text << in.rdbuf();
      spec = secout::parse_config(text.str());
    } else {
      spec = secout::preset(chosen);
    }
    return run(std::move(spec), overrides);
  } catch (const secout::ConfigError& e) {
    std::cerr << "secout: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const secout::IoError& e) {
    std::cerr << "secout: " << e.what() << '\n';
    return kExitIo;
  }
}
