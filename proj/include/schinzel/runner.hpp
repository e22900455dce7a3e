// Copyright 2026 The schinzel-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment orchestration: one JSON config in, one report out.
//
// A config is an object with a "command" and the parameters of that
// command. Numbers may be JSON numbers or decimal strings. Unknown keys are
// rejected. The report echoes the normalized config (defaults filled in,
// numbers as strings), so the echo is itself a valid config.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "schinzel/common.hpp"

namespace schinzel::runner {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchema = "schinzel-lab/report/v1";

struct Report {
  nlohmann::json payload;  // schema, tool_version, config, results, provenance, wall_time_seconds
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

/// The recognised commands, in CLI order.
const std::vector<std::string>& commands();

/// Validates the config and runs it. Throws std::invalid_argument on a bad
/// config, BudgetExceeded and InvariantViolation as raised by the modules.
/// `threads` is used when the config has no "threads" key.
Report run(const nlohmann::json& config, const Budget& budget = {}, unsigned threads = 1);

/// Pretty JSON with a trailing newline.
std::string to_json_text(const Report& report);
/// RFC 4180 CSV: header line then one line per row.
std::string to_csv_text(const Report& report);

/// Budget overrides from text such as "factor=1e6,enumeration=5e7,trial=1e5".
/// A bare number sets both the factoring and the enumeration cap.
Budget parse_budget(const std::string& text, Budget base = {});

/// Replaces every JSON number in `j` by its decimal string (doubles with 17
/// significant digits).
nlohmann::json stringify_numbers(const nlohmann::json& j);

}  // namespace schinzel::runner
