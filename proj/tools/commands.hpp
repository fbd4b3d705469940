// Copyright 2026 The detune-forge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "detune_forge/propagation.hpp"
#include "detune_forge/schedules.hpp"

namespace detune_forge::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kSolverFailure = 3,
  kVerificationFailure = 4,
};

enum class Command { solve, simulate, sweep, scan, portrait, verify };
enum class ScheduleKind { direct, short_corpse, pa_optimal };
enum class Format { csv, json };

std::string to_string(ScheduleKind k);

struct RunConfig {
  Command command = Command::solve;
  double theta_f = 0.0;
  double phi_f = 0.0;
  double f = 0.1;
  ScheduleKind kind = ScheduleKind::pa_optimal;
  double h = kDefaultStep;
  std::size_t n = kDefaultSamples;
  std::vector<double> grid;
  std::filesystem::path output_path = ".";
  Format format = Format::json;
  bool complement = false;
  /// verify only: schedule CSV to check instead of building one.
  std::filesystem::path schedule_file;
};

/// Throws PreconditionError when a field violates its documented range.
void validate(const RunConfig& cfg);

/// Builds the schedule named by cfg.kind at (θ_f, φ_f). May throw SolverError.
Schedule build_schedule(const RunConfig& cfg);

// Each command writes its artifacts under cfg.output_path, a short summary to
// `out` and diagnostics to `err`, and returns an ExitCode.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_portrait(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches. Parse errors return kBadArguments.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace detune_forge::cli
