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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "smatt/scenario.hpp"

namespace smatt {

enum class TraceFormat { Csv, Json };

/// Parses "csv" or "json". Throws ConfigError otherwise.
TraceFormat parse_trace_format(const std::string& name);

/// Column names in output order.
const std::vector<std::string>& trace_columns();

void write_csv(std::ostream& out, const std::vector<TraceRecord>& records);
void write_json(std::ostream& out, const std::vector<TraceRecord>& records);

/// Throws Error if the file cannot be written.
void emit_trace(const std::vector<TraceRecord>& records,
                const std::filesystem::path& path, TraceFormat format);

/// Inverse of write_csv. Throws Error on a header mismatch or bad field.
std::vector<TraceRecord> read_csv(std::istream& in);

}  // namespace smatt
