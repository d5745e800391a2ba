// Copyright 2026 The OWQS Authors
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

// JSON and text renderings of states, run results, plans and gflows.
//
// State JSON:
//   {"groups": [{"qubits": [1], "amps": [[0, 0], [1, 0]]}, ...]}
// Complex numbers are [re, im]; amps[i] follows the listed qubit order with
// the first qubit on the least significant index bit.

#pragma once

#include <json.hpp>
#include <string>

#include "owqs/engine.hpp"
#include "owqs/gflow.hpp"
#include "owqs/scheduler.hpp"

namespace owqs {

using Json = nlohmann::json;

Json complex_to_json(std::complex<double> c);
std::complex<double> complex_from_json(const Json& j);

Json substate_to_json(const SubState& s);
SubState substate_from_json(const Json& j);

/// Throws Error("input") on malformed documents.
InputStateSpec state_from_json(const Json& j);
InputStateSpec load_state(const std::string& path);
Json state_to_json(const InputStateSpec& spec);

Json result_to_json(const RunResult& r);
RunResult result_from_json(const Json& j);

/// `step k: E(u,v) E(u,w) ; M q ; MS={...}` per step, then the tail and
/// `peak m = ...`.
std::string plan_to_text(const ExecutionPlan& plan);
Json plan_to_json(const ExecutionPlan& plan);

Json gflow_to_json(const GFlow& flow);

}  // namespace owqs
