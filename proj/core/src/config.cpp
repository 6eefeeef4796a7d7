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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "secout/errors.hpp"
#include "secout/experiments.hpp"

namespace secout {
namespace {

std::vector<double> arithmetic_range(double start, double step, double stop) {
  std::vector<double> out;
  const std::size_t count = static_cast<std::size_t>(std::llround((stop - start) / step)) + 1;
  for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

LinkGains fig2_gains() {
  LinkGains g;
  g.mbs_mu = 1.0;
  g.mbs_su = 1.0;
  g.sbs_su = 1.0;
  g.sbs_mu = 0.2;
  g.mbs_eve = 1.0;
  g.sbs_eve = 1.0;
  return g;
}

bool contains(const std::vector<Scheme>& schemes, Scheme s) {
  return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::GammaDb: return "gamma_M_dB";
    case SweepAxis::SecrecyRate: return "secrecy_rate";
    case SweepAxis::Smr: return "beta";
    case SweepAxis::SpectrumSplit: return "alpha_split";
  }
  return "?";
}

LinkGains SweepSpec::gains() const {
  if (const auto* geo = std::get_if<LinkGeometry>(&gain_source)) return geo->gains();
  return std::get<LinkGains>(gain_source);
}

SystemConfig SweepSpec::config_at(std::size_t k) const {
  SystemConfig cfg = base;
  const double v = values.at(k);
  switch (axis) {
    case SweepAxis::GammaDb: cfg.snr_macro = db_to_linear(v); break;
    case SweepAxis::SecrecyRate:
      cfg.rate_macro = v;
      cfg.rate_small = v;
      break;
    case SweepAxis::Smr: cfg.smr = v; break;
    case SweepAxis::SpectrumSplit: cfg.spectrum_split = v; break;
  }
  return cfg;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("values: at least one axis value is required");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) throw ConfigError("values: axis values must be finite");
    if (k > 0 && !(values[k] > values[k - 1])) throw ConfigError("values: axis values must be strictly increasing");
  }
  if (schemes.empty()) throw ConfigError("schemes: at least one scheme is required");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    for (std::size_t j = i + 1; j < schemes.size(); ++j) {
      if (schemes[i] == schemes[j]) throw ConfigError("schemes: duplicate scheme");
    }
  }
  if (methods != MethodSet::Analytic && mc_samples < 1000) {
    throw ConfigError("mc_samples: Monte-Carlo runs need at least 1000 samples");
  }
  if (ic_bounds && !contains(schemes, Scheme::Ic)) throw ConfigError("ic_bounds: requires the IC scheme");

  LinkGains g;
  try {
    if (const auto* geo = std::get_if<LinkGeometry>(&gain_source)) geo->validate();
    g = gains();
    g.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("gains: ") + e.what());
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const SystemConfig cfg = config_at(k);
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string(axis_name(axis)) + ": " + e.what());
    }
    if (contains(schemes, Scheme::Ic) && cfg.smr > max_cancelling_smr(g)) {
      std::ostringstream msg;
      msg << "beta = " << cfg.smr << " exceeds the cancellation bound sigma2_Mm/sigma2_Sm = "
          << max_cancelling_smr(g) << " required by the IC scheme";
      throw ConfigError(msg.str());
    }
  }
}

std::vector<std::string_view> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6"}; }

SweepSpec preset(std::string_view name) {
  SweepSpec s;
  s.name = std::string(name);
  s.methods = MethodSet::Both;
  if (name == "fig2") {
    s.axis = SweepAxis::GammaDb;
    s.values = arithmetic_range(10.0, 5.0, 50.0);
    s.gain_source = fig2_gains();
    s.schemes = {Scheme::Ic};
    s.cells = CellSet::Macro;
    s.ic_bounds = true;
    s.mc_samples = 10'000'000;
  } else if (name == "fig3" || name == "fig5") {
    s.axis = SweepAxis::GammaDb;
    s.values = name == "fig3" ? arithmetic_range(60.0, 10.0, 160.0) : arithmetic_range(80.0, 10.0, 160.0);
    s.combiner = name == "fig3" ? Combiner::Product : Combiner::Mean;
  } else if (name == "fig4" || name == "fig6") {
    s.axis = SweepAxis::SecrecyRate;
    s.values = arithmetic_range(0.5, 0.5, 4.0);
    s.combiner = name == "fig4" ? Combiner::Product : Combiner::Mean;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class EntryReader {
 public:
  explicit EntryReader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  double number(const Entry& e) const {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || e.value.empty()) {
      throw ConfigError("'" + e.value + "' is not a number", e.line);
    }
    if (!std::isfinite(v)) throw ConfigError("'" + e.value + "' is not finite", e.line);
    return v;
  }

  std::uint64_t count(const Entry& e) const {
    const double v = number(e);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
      throw ConfigError("'" + e.value + "' is not a non-negative integer", e.line);
    }
    // Integers such as seeds are parsed exactly when written without an exponent.
    std::uint64_t exact = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, exact);
    if (ec == std::errc() && ptr == end) return exact;
    return static_cast<std::uint64_t>(v);
  }

  bool flag(const Entry& e) const {
    const std::string v = lower(e.value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("expected true or false, got '" + e.value + "'", e.line);
  }

  std::vector<double> values(const Entry& e) const {
    std::vector<double> out;
    if (e.value.find(':') != std::string::npos) {
      std::vector<double> parts;
      std::istringstream in(e.value);
      std::string piece;
      while (std::getline(in, piece, ':')) parts.push_back(number(Entry{trim(piece), e.line}));
      if (parts.size() != 3) throw ConfigError("range must be start:step:stop", e.line);
      const double start = parts[0], step = parts[1], stop = parts[2];
      if (!(step > 0.0) || !(stop >= start)) throw ConfigError("range needs step > 0 and stop >= start", e.line);
      const double steps = (stop - start) / step;
      if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        throw ConfigError("range stop is not a whole number of steps from start", e.line);
      }
      if (steps > 1e6) throw ConfigError("range has too many points", e.line);
      return arithmetic_range(start, step, stop);
    }
    for (const std::string& item : split_list(e.value)) out.push_back(number(Entry{item, e.line}));
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

constexpr std::array<std::string_view, 18> kTopLevelKeys = {
    "preset", "name", "axis", "values", "schemes", "methods", "combiner", "cells", "ic_bounds",
    "mc_samples", "seed", "gamma_M_dB", "beta", "alpha", "R_M", "R_S", "R", "gamma_M"};

std::optional<Link> link_from_suffix(std::string_view suffix) {
  for (Link link : kAllLinks) {
    if (link_name(link) == suffix) return link;
  }
  return std::nullopt;
}

enum class Section { Top, Geometry, Gains };

}  // namespace

SweepSpec parse_config(std::string_view text) {
  std::map<std::string, Entry> top;
  std::map<std::string, Entry> geometry;
  std::map<std::string, Entry> gains;
  Section section = Section::Top;
  int geometry_line = 0;
  int gains_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const std::string name = lower(trim(line.substr(1, line.size() - 2)));
      if (name == "sweep") {
        section = Section::Top;
      } else if (name == "geometry") {
        if (geometry_line != 0) throw ConfigError("duplicate [geometry] section", line_no);
        geometry_line = line_no;
        section = Section::Geometry;
      } else if (name == "gains") {
        if (gains_line != 0) throw ConfigError("duplicate [gains] section", line_no);
        gains_line = line_no;
        section = Section::Gains;
      } else {
        throw ConfigError("unknown section [" + name + "]", line_no);
      }
      if (geometry_line != 0 && gains_line != 0) {
        throw ConfigError("[geometry] and [gains] are mutually exclusive gain sources", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);

    std::map<std::string, Entry>* target = &top;
    if (section == Section::Top) {
      if (std::find(kTopLevelKeys.begin(), kTopLevelKeys.end(), key) == kTopLevelKeys.end()) {
        throw ConfigError("unknown key '" + key + "'", line_no);
      }
    } else {
      const auto underscore = key.rfind('_');
      const std::string prefix = underscore == std::string::npos ? key : key.substr(0, underscore);
      const std::string suffix = underscore == std::string::npos ? "" : key.substr(underscore + 1);
      const bool prefix_ok = section == Section::Gains
                                 ? prefix == "sigma2"
                                 : (prefix == "d" || prefix == "pathloss" || prefix == "delta2");
      if (!prefix_ok || !link_from_suffix(suffix)) {
        throw ConfigError("unknown key '" + key + "' in " +
                              (section == Section::Gains ? "[gains]" : "[geometry]"),
                          line_no);
      }
      target = section == Section::Gains ? &gains : &geometry;
    }
    if (target->contains(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    (*target)[key] = Entry{value, line_no};
  }

  const EntryReader t(top);
  SweepSpec spec;
  if (const Entry* e = t.find("preset")) {
    try {
      spec = preset(e->value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), e->line);
    }
  } else {
    // Ordinary sweeps start from the analytic-only default operating point.
    spec = SweepSpec{};
  }

  if (const Entry* e = t.find("name")) spec.name = e->value;
  if (const Entry* e = t.find("axis")) {
    const std::string v = lower(e->value);
    if (v == "gamma_m_db") spec.axis = SweepAxis::GammaDb;
    else if (v == "secrecy_rate") spec.axis = SweepAxis::SecrecyRate;
    else if (v == "beta") spec.axis = SweepAxis::Smr;
    else if (v == "alpha_split") spec.axis = SweepAxis::SpectrumSplit;
    else throw ConfigError("unknown axis '" + e->value + "'", e->line);
  }
  if (const Entry* e = t.find("values")) spec.values = t.values(*e);
  if (const Entry* e = t.find("schemes")) {
    spec.schemes.clear();
    for (const std::string& item : split_list(e->value)) {
      const std::string v = lower(item);
      if (v == "oss") spec.schemes.push_back(Scheme::Oss);
      else if (v == "il") spec.schemes.push_back(Scheme::Il);
      else if (v == "ic") spec.schemes.push_back(Scheme::Ic);
      else throw ConfigError("unknown scheme '" + item + "'", e->line);
    }
  }
  if (const Entry* e = t.find("methods")) {
    const std::string v = lower(e->value);
    if (v == "analytic") spec.methods = MethodSet::Analytic;
    else if (v == "mc") spec.methods = MethodSet::MonteCarlo;
    else if (v == "both") spec.methods = MethodSet::Both;
    else throw ConfigError("methods must be analytic, mc or both", e->line);
  }
  if (const Entry* e = t.find("combiner")) {
    const std::string v = lower(e->value);
    if (v == "product") spec.combiner = Combiner::Product;
    else if (v == "mean") spec.combiner = Combiner::Mean;
    else throw ConfigError("combiner must be product or mean", e->line);
  }
  if (const Entry* e = t.find("cells")) {
    const std::string v = lower(e->value);
    if (v == "both") spec.cells = CellSet::Both;
    else if (v == "macro") spec.cells = CellSet::Macro;
    else throw ConfigError("cells must be both or macro", e->line);
  }
  if (const Entry* e = t.find("ic_bounds")) spec.ic_bounds = t.flag(*e);
  if (const Entry* e = t.find("mc_samples")) spec.mc_samples = t.count(*e);
  if (const Entry* e = t.find("seed")) spec.seed = t.count(*e);

  const Entry* gamma_db = t.find("gamma_M_dB");
  const Entry* gamma_lin = t.find("gamma_M");
  if (gamma_db && gamma_lin) {
    throw ConfigError("give gamma_M_dB or gamma_M, not both", std::max(gamma_db->line, gamma_lin->line));
  }
  if (gamma_db) spec.base.snr_macro = db_to_linear(t.number(*gamma_db));
  if (gamma_lin) spec.base.snr_macro = t.number(*gamma_lin);
  if (const Entry* e = t.find("beta")) spec.base.smr = t.number(*e);
  if (const Entry* e = t.find("alpha")) spec.base.spectrum_split = t.number(*e);
  if (const Entry* e = t.find("R")) {
    for (const char* key : {"R_M", "R_S"}) {
      if (const Entry* other = t.find(key)) {
        throw ConfigError("R sets both rates; drop R_M and R_S", std::max(e->line, other->line));
      }
    }
    spec.base.rate_macro = spec.base.rate_small = t.number(*e);
  }
  if (const Entry* e = t.find("R_M")) spec.base.rate_macro = t.number(*e);
  if (const Entry* e = t.find("R_S")) spec.base.rate_small = t.number(*e);

  if (geometry_line != 0) {
    const EntryReader g(geometry);
    LinkGeometry geo = LinkGeometry::reference();
    for (Link link : kAllLinks) {
      const std::string suffix(link_name(link));
      if (const Entry* e = g.find("d_" + suffix)) geo[link].distance_m = g.number(*e);
      if (const Entry* e = g.find("pathloss_" + suffix)) geo[link].exponent = g.number(*e);
      if (const Entry* e = g.find("delta2_" + suffix)) geo[link].small_scale_variance = g.number(*e);
    }
    try {
      geo.validate();
    } catch (const DomainError& err) {
      throw ConfigError(err.what(), geometry_line);
    }
    spec.gain_source = geo;
  } else if (gains_line != 0) {
    const EntryReader g(gains);
    LinkGains direct;
    for (Link link : kAllLinks) {
      const std::string key = "sigma2_" + std::string(link_name(link));
      const Entry* e = g.find(key);
      if (!e) throw ConfigError("[gains] must set all six links; missing " + key, gains_line);
      direct[link] = g.number(*e);
    }
    spec.gain_source = direct;
  }

  spec.validate();
  return spec;
}

}  // namespace secout
