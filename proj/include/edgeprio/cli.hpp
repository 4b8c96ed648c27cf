// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command-line front end and the JSON documents it emits.
//
// Exit codes: 0 success, 1 invalid instance or walk, 2 search budget
// exhausted, 3 malformed input or arguments.

#include <ostream>
#include <string>
#include <vector>

#include "edgeprio/analysis.hpp"
#include "edgeprio/eaf.hpp"
#include "edgeprio/instance_io.hpp"
#include "edgeprio/simulator.hpp"

namespace edgeprio {

inline constexpr const char* kToolVersion = "edgeprio 1.0.0";

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitBudget = 2, kExitMalformed = 3 };

Json trace_to_json(const SimulationTrace& trace);
Json report_to_json(const EquilibriumReport& report);
Json eaf_to_json(const EafResult& eaf);
Json draft_to_json(const PriorityListDraft& draft);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeprio
