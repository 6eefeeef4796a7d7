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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "secout/channel_model.hpp"
#include "secout/schemes_analytic.hpp"
#include "secout/schemes_montecarlo.hpp"

namespace secout {

enum class SweepAxis { GammaDb, SecrecyRate, Smr, SpectrumSplit };
enum class MethodSet { Analytic, MonteCarlo, Both };
enum class CellSet { Both, Macro };

std::string_view axis_name(SweepAxis axis);

using GainSource = std::variant<LinkGeometry, LinkGains>;

struct SweepSpec {
  std::string name = "sweep";
  SweepAxis axis = SweepAxis::GammaDb;
  std::vector<double> values{100.0};
  /// Fixed operating point; the swept field is overwritten per point.
  SystemConfig base{};
  GainSource gain_source = LinkGeometry::reference();
  std::vector<Scheme> schemes{Scheme::Oss, Scheme::Il, Scheme::Ic};
  MethodSet methods = MethodSet::Analytic;
  Combiner combiner = Combiner::Product;
  CellSet cells = CellSet::Both;
  /// Adds lower_bound / upper_bound rows for the IC macro envelope.
  bool ic_bounds = false;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;

  LinkGains gains() const;

  /// Operating point for the k-th axis value.
  SystemConfig config_at(std::size_t k) const;

  /// Throws ConfigError naming the violated rule.
  void validate() const;
};

/// Names accepted by `preset`.
std::vector<std::string_view> preset_names();

/// Built-in sweeps fig2 ... fig6. Throws ConfigError for an unknown name.
SweepSpec preset(std::string_view name);

/// Parses the line-oriented `key = value` format documented in
/// docs/config_grammar.md. Unknown keys, malformed numbers and conflicting
/// gain sources raise ConfigError with the offending line number.
SweepSpec parse_config(std::string_view text);

struct ResultRow {
  double axis_value = 0.0;
  std::string scheme;
  std::string method;  // analytic | mc | lower_bound | upper_bound
  std::optional<double> p_macro;
  std::optional<double> p_small;
  std::optional<double> p_overall;
  std::optional<double> std_error;
  std::optional<double> wall_time_ms;
  std::string error;

  bool failed() const { return !error.empty(); }
};

struct RunOptions {
  /// Sweep points evaluated concurrently.
  unsigned workers = 1;
  /// Leave wall_time_ms blank so repeated runs compare byte for byte.
  bool record_timing = true;
  McOptions mc{};
};

/// One row per (axis value, scheme, method), in axis order. Failures at a
/// point are written to that row's error field and the sweep carries on.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const RunOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "axis,scheme,method,p_macro,p_small,p_overall,stderr,wall_time_ms,error";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);

/// Throws IoError when the file cannot be written.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination);

/// Reads back what emit_csv writes.
std::vector<ResultRow> parse_csv(std::istream& in);

}  // namespace secout
