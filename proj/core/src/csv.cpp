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

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "secout/errors.hpp"
#include "secout/experiments.hpp"

namespace secout {
namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// Error text goes on one line; commas and quotes force RFC 4180 quoting.
std::string format_text(const std::string& text) {
  std::string flat;
  for (char c : text) flat.push_back(c == '\n' || c == '\r' ? ' ' : c);
  if (flat.find_first_of(",\"") == std::string::npos) return flat;
  std::string quoted = "\"";
  for (char c : flat) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw IoError("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

std::optional<double> parse_optional(const std::string& s, int line_no) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  if (rows.empty()) throw DomainError("emit_csv: no rows to write");
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << format_number(r.axis_value) << ',' << r.scheme << ',' << r.method << ','
        << format_optional(r.p_macro) << ',' << format_optional(r.p_small) << ','
        << format_optional(r.p_overall) << ',' << format_optional(r.std_error) << ','
        << format_optional(r.wall_time_ms) << ',' << format_text(r.error) << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
  emit_csv(rows, out);
  out.flush();
  if (!out) throw IoError("write to '" + destination.string() + "' failed");
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("csv: missing or unexpected header");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 9) throw IoError("csv line " + std::to_string(line_no) + ": expected 9 fields");
    ResultRow r;
    const auto axis = parse_optional(f[0], line_no);
    if (!axis) throw IoError("csv line " + std::to_string(line_no) + ": empty axis value");
    r.axis_value = *axis;
    r.scheme = f[1];
    r.method = f[2];
    r.p_macro = parse_optional(f[3], line_no);
    r.p_small = parse_optional(f[4], line_no);
    r.p_overall = parse_optional(f[5], line_no);
    r.std_error = parse_optional(f[6], line_no);
    r.wall_time_ms = parse_optional(f[7], line_no);
    r.error = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace secout
