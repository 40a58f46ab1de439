// Copyright 2026 The sprint-swap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sprint/config.hpp"

namespace sprint {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_numerical = 2 };

/// Fixed numeric format of every CSV cell: scientific, 9 significant digits.
std::string csv_number(double v);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_histogram_csv(std::ostream& out, const FidelityHistogram& h);
void write_optimization_csv(std::ostream& out, const OptimizationResult& r);

// Each command writes a human-readable report to `report` and files named in
// the config; the return value is the process exit code.
int cmd_outcome(const ScenarioConfig& cfg, std::ostream& report);
int cmd_sweep(const ScenarioConfig& cfg, std::ostream& report);
int cmd_optimize(const ScenarioConfig& cfg, std::ostream& report);
int cmd_tables(std::ostream& report);

inline constexpr double oracle_probability_tolerance = 1e-4;
inline constexpr double oracle_conservation_tolerance = 1e-6;

/// Randomised closed-form versus time-domain suite. When `scenario` is given it
/// runs first and is the one dumped to spec.trajectory_path.
int cmd_oracle_check(const OracleCheckSpec& spec, const OracleCase* scenario, std::ostream& report);

/// The configured scenario as an oracle case (drive with optimal detunings resolved).
OracleCase scenario_case(const ScenarioConfig& cfg);

/// Maps exceptions from a command to an exit code and a one-line message.
template <class F>
int run_guarded(F&& f, std::ostream& err);

}  // namespace sprint

#include <ostream>

namespace sprint {

template <class F>
int run_guarded(F&& f, std::ostream& err) {
  try {
    return f();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }
}

}  // namespace sprint
