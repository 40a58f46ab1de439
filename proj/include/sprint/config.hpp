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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "sprint/ion_catalog.hpp"
#include "sprint/model.hpp"
#include "sprint/optimizer.hpp"
#include "sprint/oracle.hpp"
#include "sprint/sampling.hpp"

namespace sprint {

/// Malformed or inconsistent scenario input; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  double kappa_ex_min = 0.0;  // rad/s
  double kappa_ex_max = 0.0;
  std::size_t points = 0;
  bool log_spacing = false;
  bool optimize = true;
};

struct OracleCheckSpec {
  std::size_t cases = 100;
  std::uint64_t seed = 7;
  double seed_ratio = default_seed_ratio;
  bool extrapolate = true;
  int levels = 3;
  std::optional<std::string> trajectory_path;
};

/// A fully resolved scenario. Rates are rad/s; the file stores MHz.
struct ScenarioConfig {
  std::optional<std::string> preset_id;
  CavityFlavor flavor = CavityFlavor::conventional;
  ModePhase phase = ModePhase::sign_absorbed;
  LambdaSystem system;
  CavityParams cavity;
  std::optional<MirrorSpec> mirrors;

  DriveSettings drive;
  bool optimal_detunings = false;
  Branch branch = Branch::plus;

  std::optional<JointQubitState> state;
  bool sampler_requested = false;
  SamplerSpec sampler;

  std::optional<OptimizationBounds> bounds;  // default_bounds when absent
  bool pin_field = false;
  OptimizerOptions optimizer;

  std::optional<SweepSpec> sweep;
  OracleCheckSpec oracle;

  std::optional<std::string> output_path;
  std::optional<std::string> histogram_path;

  OptimizationBounds effective_bounds() const;
  /// Drive with optimal detunings substituted when requested.
  DriveSettings effective_drive() const;
};

/// Sections: system, cavity, drive, state, sampler, optimize, sweep, oracle, output.
/// Unknown sections or keys are rejected.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Scenario text that reproduces the preset with every field spelled out.
std::string export_preset(const Preset& p);

}  // namespace sprint
