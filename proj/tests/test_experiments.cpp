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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "secout/errors.hpp"
#include "secout/experiments.hpp"

using namespace secout;

namespace {

int error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

SweepSpec small_spec() {
  SweepSpec s;
  s.values = {90.0, 100.0, 110.0};
  s.methods = MethodSet::Both;
  s.mc_samples = 5000;
  return s;
}

}  // namespace

TEST_CASE("presets") {
  CHECK(preset_names().size() == 5);
  for (std::string_view name : preset_names()) {
    const SweepSpec s = preset(name);
    CHECK(s.name == name);
    CHECK_NOTHROW(s.validate());
  }
  const SweepSpec fig2 = preset("fig2");
  CHECK(fig2.schemes == std::vector<Scheme>{Scheme::Ic});
  CHECK(fig2.cells == CellSet::Macro);
  CHECK(fig2.ic_bounds);
  CHECK(fig2.values.front() == 10.0);
  CHECK(fig2.values.back() == 50.0);
  CHECK(fig2.gains().sbs_mu == 0.2);

  CHECK(preset("fig3").combiner == Combiner::Product);
  CHECK(preset("fig5").combiner == Combiner::Mean);
  CHECK(preset("fig4").axis == SweepAxis::SecrecyRate);
  CHECK(preset("fig6").values.size() == 8);
  CHECK_THROWS_AS(preset("fig7"), ConfigError);
}

TEST_CASE("config parsing") {
  SUBCASE("full example") {
    const SweepSpec s = parse_config(R"(# comment
name = demo
axis = secrecy_rate
values = 0.5, 1, 2   # trailing comment
schemes = OSS, IC
methods = both
combiner = mean
mc_samples = 2000
seed = 9
gamma_M_dB = 110
beta = 0.25

[geometry]
d_Ss = 50
pathloss_Me = 3
)");
    CHECK(s.name == "demo");
    CHECK(s.axis == SweepAxis::SecrecyRate);
    CHECK(s.values == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(s.schemes == std::vector<Scheme>{Scheme::Oss, Scheme::Ic});
    CHECK(s.methods == MethodSet::Both);
    CHECK(s.combiner == Combiner::Mean);
    CHECK(s.mc_samples == 2000);
    CHECK(s.seed == 9);
    CHECK(s.base.snr_macro == doctest::Approx(1e11));
    CHECK(s.base.smr == 0.25);
    const LinkGains g = s.gains();
    CHECK(g.sbs_su == doctest::Approx(std::pow(50.0, -2.5)));
    CHECK(g.mbs_eve == doctest::Approx(std::pow(300.0, -3.0)));
    CHECK(s.config_at(2).rate_macro == 2.0);
    CHECK(s.config_at(2).rate_small == 2.0);
  }
  SUBCASE("ranges and presets as a base") {
    const SweepSpec s = parse_config("preset = fig3\nvalues = 100:20:160\nseed = 4\n");
    CHECK(s.values == std::vector<double>{100.0, 120.0, 140.0, 160.0});
    CHECK(s.seed == 4);
    CHECK(s.combiner == Combiner::Product);
  }
  SUBCASE("explicit gains") {
    const SweepSpec s = parse_config(
        "[gains]\nsigma2_Mm = 1\nsigma2_Ms = 2\nsigma2_Ss = 3\nsigma2_Sm = 0.1\nsigma2_Me = 5\nsigma2_Se = 6\n");
    const LinkGains g = s.gains();
    CHECK(g.mbs_su == 2.0);
    CHECK(g.sbs_eve == 6.0);
  }
  SUBCASE("errors carry the line number") {
    CHECK(error_line("values = 1\nbogus = 2\n") == 2);
    CHECK(error_line("\n\ngamma_M_dB = abc\n") == 3);
    CHECK(error_line("seed = 1\nseed = 2\n") == 2);
    CHECK(error_line("R = 1\nR_M = 2\n") == 2);
    CHECK(error_line("R_S = 1\nR = 2\n") == 2);
    CHECK(error_line("gamma_M = 1e9\nseed = 3\ngamma_M_dB = 90\n") == 3);
    CHECK(error_line("values = 3:1:1\n") == 1);
    CHECK(error_line("[geometry]\nd_Mm = 1\n[gains]\n") == 3);
    CHECK(error_line("[gains]\nsigma2_Mm = 1\n") > 0);
    CHECK(error_line("[weird]\n") == 1);
    CHECK(error_line("[geometry]\nsigma2_Mm = 1\n") == 2);
    CHECK(error_line("axis = sideways\n") == 1);
    CHECK(error_line("schemes = OSS, XYZ\n") == 1);
    CHECK(error_line("methods = analytic\nvalues = 1\nno equals sign\n") == 3);
  }
  SUBCASE("semantic checks") {
    CHECK_THROWS_AS(parse_config("values = 2, 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("methods = mc\nmc_samples = 10\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("schemes = OSS\nic_bounds = true\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("schemes = IC, IC\n"), ConfigError);
    // beta above the cancellation limit of the reference geometry
    CHECK_THROWS_AS(parse_config("schemes = IC\nbeta = 100\n"), ConfigError);
    CHECK_NOTHROW(parse_config("schemes = OSS, IL\nbeta = 100\n"));
  }
}

TEST_CASE("sweep rows") {
  const SweepSpec spec = small_spec();
  const std::vector<ResultRow> rows = run_sweep(spec, RunOptions{1, false, {}});
  REQUIRE(rows.size() == 3 * 3 * 2);
  CHECK(rows[0].axis_value == 90.0);
  CHECK(rows[0].scheme == "OSS");
  CHECK(rows[0].method == "analytic");
  CHECK(rows[1].method == "mc");
  CHECK(rows.back().axis_value == 110.0);
  for (const ResultRow& r : rows) {
    CHECK(!r.failed());
    CHECK(r.p_overall.has_value());
    CHECK(!r.wall_time_ms.has_value());
    CHECK(r.std_error.has_value() == (r.method == "mc"));
    CHECK(*r.p_overall == doctest::Approx(*r.p_macro * *r.p_small));
  }
  const std::vector<ResultRow> timed = run_sweep(spec);
  CHECK(timed.front().wall_time_ms.has_value());
}

TEST_CASE("sweep results do not depend on the worker count") {
  const SweepSpec spec = small_spec();
  const std::string serial = to_csv(run_sweep(spec, RunOptions{1, false, {}}));
  CHECK(serial == to_csv(run_sweep(spec, RunOptions{3, false, {}})));
  CHECK(serial == to_csv(run_sweep(spec, RunOptions{2, false, McOptions{1u << 16, 2}})));
}

TEST_CASE("failures stay in their rows") {
  SweepSpec spec;
  spec.axis = SweepAxis::Smr;
  spec.values = {0.0, 0.5};
  spec.schemes = {Scheme::Il, Scheme::Ic};
  spec.ic_bounds = true;
  const std::vector<ResultRow> rows = run_sweep(spec, RunOptions{1, false, {}});
  REQUIRE(rows.size() == 8);
  CHECK(!rows[0].failed());  // IL with a silent small cell is still defined
  CHECK(rows[1].failed());   // IC macro needs beta > 0
  CHECK(!rows[1].p_macro.has_value());
  CHECK(rows[2].method == "lower_bound");
  CHECK(rows[2].failed());
  for (std::size_t k = 4; k < rows.size(); ++k) CHECK(!rows[k].failed());
  CHECK(*rows[7].p_macro == doctest::Approx(4.0 * *rows[6].p_macro));
}

TEST_CASE("macro-only sweeps leave the small cell blank") {
  const SweepSpec spec = preset("fig2");
  SweepSpec quick = spec;
  quick.methods = MethodSet::Analytic;
  const std::vector<ResultRow> rows = run_sweep(quick, RunOptions{1, false, {}});
  REQUIRE(rows.size() == quick.values.size() * 3);
  for (const ResultRow& r : rows) {
    CHECK(!r.failed());
    CHECK(!r.p_small.has_value());
    CHECK(!r.p_overall.has_value());
  }
}

TEST_CASE("csv output") {
  ResultRow row{100.0, "IC", "mc", 0.25, 0.5, 0.125, 1e-3, std::nullopt, ""};
  ResultRow bad{110.0, "IC", "analytic", {}, {}, {}, {}, 1.5, "bad, \"quoted\"\nsecond line"};
  const std::string text = to_csv({row, bad});
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvHeader);
  std::getline(lines, line);
  CHECK(line == "100,IC,mc,0.25,0.5,0.125,0.001,,");
  std::getline(lines, line);
  CHECK(line == "110,IC,analytic,,,,,1.5,\"bad, \"\"quoted\"\" second line\"");
  CHECK(!std::getline(lines, line));

  CHECK(to_csv({row}) == std::string(kCsvHeader) + "\n100,IC,mc,0.25,0.5,0.125,0.001,,\n");
  CHECK_THROWS_AS(to_csv({}), DomainError);
}

TEST_CASE("csv round trip") {
  const std::vector<ResultRow> rows = run_sweep(small_spec(), RunOptions{1, false, {}});
  std::istringstream in(to_csv(rows));
  const std::vector<ResultRow> back = parse_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].scheme == rows[k].scheme);
    CHECK(back[k].method == rows[k].method);
    CHECK(back[k].p_overall.has_value());
    CHECK(*back[k].p_overall == doctest::Approx(*rows[k].p_overall).epsilon(1e-9));
    CHECK(back[k].std_error.has_value() == rows[k].std_error.has_value());
  }
  std::istringstream wrong("axis,scheme\n1,OSS\n");
  CHECK_THROWS(parse_csv(wrong));
}

TEST_CASE("csv files") {
  const auto dir = std::filesystem::temp_directory_path() / "secout_test_experiments";
  std::filesystem::create_directories(dir);
  const std::vector<ResultRow> rows = run_sweep(small_spec(), RunOptions{1, false, {}});
  emit_csv(rows, dir / "out.csv");
  std::ifstream in(dir / "out.csv");
  CHECK(parse_csv(in).size() == rows.size());
  CHECK_THROWS_AS(emit_csv(rows, dir / "missing" / "nested" / "out.csv"), IoError);
  std::filesystem::remove_all(dir);
}
