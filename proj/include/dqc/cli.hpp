// Copyright 2026 The dqc Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqc/timeline.hpp"
#include "dqc/verify.hpp"
#include "json.hpp"

namespace dqc::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kUsageError = 2,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct SimulateRequest {
    ProtocolInputs inputs;
    /// Forced outcomes in measurement order; when absent, `seed` drives sampling.
    std::optional<std::vector<int>> outcomes;
    std::optional<std::uint64_t> seed;
};

/// Builds and runs one protocol instance. An async protocol whose correction cannot
/// be formed (DegenerateAmplitude) falls back to its synchronous builder followed by
/// the same local suffix, and the report records the fallback.
nlohmann::json simulate(const SimulateRequest &request);

/// Parses the simulate config document. Throws dqc::Error(InvalidConfig).
SimulateRequest simulate_request_from_json(const nlohmann::json &config);

struct Scenario {
    std::string id;
    std::string protocol;
    timeline::Family family = timeline::Family::teledata;
    std::size_t k = 0;
    timeline::LatencyModel model;
};

/// Accepts a scenario object, an array of them, or {"scenarios": [...]}.
std::vector<Scenario> scenarios_from_json(const nlohmann::json &config);

std::string timeline_csv(const std::vector<Scenario> &scenarios);
nlohmann::json timeline_json(const std::vector<Scenario> &scenarios);

}  // namespace dqc::cli
