/*
 Copyright 2026 The smatt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "smatt/trace_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include "smatt/errors.hpp"

namespace smatt {
namespace {

std::vector<std::string> make_columns() {
  std::vector<std::string> cols = {"k",          "t",        "att_err_deg",
                                   "rate_err",   "trace_P",  "membership",
                                   "dir_idx",    "theta0",   "r_star",
                                   "beta_flag"};
  for (const char* block : {"true", "est"}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        cols.push_back(std::string(block) + "_R" + std::to_string(i) +
                       std::to_string(j));
      }
    }
    for (int i = 0; i < 3; ++i) {
      cols.push_back(std::string(block) + "_W" + std::to_string(i));
    }
  }
  return cols;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

// Values of one record in column order, as doubles.
std::vector<double> flatten(const TraceRecord& r) {
  std::vector<double> v = {static_cast<double>(r.k),
                           r.t,
                           r.att_err_deg,
                           r.rate_err,
                           r.trace_P,
                           r.membership ? 1.0 : 0.0,
                           static_cast<double>(r.dir_idx),
                           r.theta0,
                           r.r_star,
                           r.beta_flag ? 1.0 : 0.0};
  for (const auto* m : {&r.truth_R, &r.estimate_R}) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v.push_back((*m)(i, j));
    const Vector3& w = m == &r.truth_R ? r.truth_Omega : r.estimate_Omega;
    for (int i = 0; i < 3; ++i) v.push_back(w(i));
  }
  return v;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error("trace csv: cannot parse number '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error("trace csv: cannot parse integer '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TraceFormat parse_trace_format(const std::string& name) {
  if (name == "csv") return TraceFormat::Csv;
  if (name == "json") return TraceFormat::Json;
  throw ConfigError("unknown trace format '" + name + "' (expected csv or json)");
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = make_columns();
  return cols;
}

void write_csv(std::ostream& out, const std::vector<TraceRecord>& records) {
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
  for (const TraceRecord& r : records) {
    const std::vector<double> v = flatten(r);
    out << r.k << ',' << format_double(r.t) << ',' << format_double(r.att_err_deg)
        << ',' << format_double(r.rate_err) << ',' << format_double(r.trace_P)
        << ',' << (r.membership ? 1 : 0) << ',' << r.dir_idx << ','
        << format_double(r.theta0) << ',' << format_double(r.r_star) << ','
        << (r.beta_flag ? 1 : 0);
    for (std::size_t i = 10; i < v.size(); ++i) out << ',' << format_double(v[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<TraceRecord>& records) {
  const auto& cols = trace_columns();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TraceRecord& r : records) {
    const std::vector<double> v = flatten(r);
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == "k" || cols[i] == "dir_idx") {
        obj[cols[i]] = static_cast<int>(v[i]);
      } else if (cols[i] == "membership" || cols[i] == "beta_flag") {
        obj[cols[i]] = v[i] != 0.0;
      } else {
        obj[cols[i]] = v[i];
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void emit_trace(const std::vector<TraceRecord>& records,
                const std::filesystem::path& path, TraceFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  if (format == TraceFormat::Csv) {
    write_csv(out, records);
  } else {
    write_json(out, records);
  }
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<TraceRecord> read_csv(std::istream& in) {
  const auto& cols = trace_columns();
  std::string line;
  if (!std::getline(in, line) || split(line) != cols) {
    throw Error("trace csv: header does not match the trace schema");
  }
  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != cols.size()) {
      throw Error("trace csv: row has " + std::to_string(cells.size()) +
                  " fields, expected " + std::to_string(cols.size()));
    }
    TraceRecord r;
    r.k = parse_int(cells[0]);
    r.t = parse_double(cells[1]);
    r.att_err_deg = parse_double(cells[2]);
    r.rate_err = parse_double(cells[3]);
    r.trace_P = parse_double(cells[4]);
    r.membership = parse_int(cells[5]) != 0;
    r.dir_idx = parse_int(cells[6]);
    r.theta0 = parse_double(cells[7]);
    r.r_star = parse_double(cells[8]);
    r.beta_flag = parse_int(cells[9]) != 0;
    std::size_t c = 10;
    for (auto* m : {&r.truth_R, &r.estimate_R}) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) (*m)(i, j) = parse_double(cells[c++]);
      Vector3& w = m == &r.truth_R ? r.truth_Omega : r.estimate_Omega;
      for (int i = 0; i < 3; ++i) w(i) = parse_double(cells[c++]);
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace smatt
