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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sprint/model.hpp"

namespace sprint {

/// Linear amplitude equations dc/dt = -R c + drive * exp(-kappa_s t) of the
/// cascaded seed-cavity-ion system in the single-excitation sector.
/// Index order matches SteadyStateAmplitudes.
struct AmplitudeEquations {
  AmplitudeEquations(const JointQubitState& state, const LambdaSystem& system,
                     const CavityParams& cavity, const EffectiveDetunings& dets, double kappa_s);

  JointQubitState state;
  cplx d_down, d_up, g_e;  // kappa_t + i delta_down, kappa_t + i delta_up, gamma + i delta_e
  cplx g_down, g_up;
  double kappa_s, kappa_ex, kappa_i, gamma;
  std::array<cplx, 5> drive;  // coefficients of exp(-kappa_s t)
  std::array<cplx, 4> seed;   // seed amplitude per (mode, atom) channel at t = 0

  /// Largest rate entering the equations; bounds the admissible step.
  double max_rate() const;
  void derivative(double t, const std::array<cplx, 5>& c, std::array<cplx, 5>& dc) const;
};

struct OracleSettings {
  double kappa_s = 0.0;
  double t_max = 0.0;
  double dt = 0.0;
  std::size_t max_rows = 2000;  // trajectory rows kept for output; integration uses every step
};

inline constexpr double default_seed_ratio = 200.0;   // kappa_s = kappa_t / ratio
inline constexpr double default_horizon = 12.0;       // t_max = horizon / kappa_s
inline constexpr double steps_per_fastest_rate = 50.0;

/// kappa_s = kappa_t / 200, t_max = 12 / kappa_s, dt = 1 / (50 max_rate) rounded down
/// to divide t_max evenly.
OracleSettings default_oracle_settings(const LambdaSystem& system, const CavityParams& cavity,
                                       const EffectiveDetunings& dets,
                                       double seed_ratio = default_seed_ratio);

/// Integrated output flux per atom branch: aa = int |A_a|^2, bb = int |A_b|^2, ab = int A_a conj(A_b).
struct OutputGram {
  double aa = 0.0;
  double bb = 0.0;
  cplx ab{};
};

struct TrajectoryRow {
  double t = 0.0;
  std::array<cplx, 5> c{};
  double envelope = 1.0;  // exp(-kappa_s t)
  double flux_dark = 0.0;
  double flux_bright = 0.0;
  double loss_intrinsic = 0.0;
  double loss_spontaneous = 0.0;
};

struct Trajectory {
  JointQubitState state;
  double kappa_s = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<TrajectoryRow> rows;  // uniformly decimated, first and last step included

  std::array<OutputGram, 2> gram{};  // index 0: atom down branch, 1: atom up branch
  double loss_intrinsic = 0.0;
  double loss_spontaneous = 0.0;
  std::array<cplx, 5> final_c{};
  double final_envelope = 1.0;
};

struct OracleReport {
  double p_dark = 0.0;
  double p_bright = 0.0;
  double p_loss_intrinsic = 0.0;
  double p_loss_spontaneous = 0.0;
  double p_residual = 0.0;
  double conservation_residual = 0.0;
  bool horizon_ok = true;  // false when more than 1e-6 of the norm is still inside at t_max
};

inline constexpr double max_residual_norm = 1e-6;

/// Fixed-step classical RK4 from c_k(0) = 0. The output-flux and loss integrals
/// are carried as extra RK4 components so that they share the integrator order.
/// Throws std::invalid_argument when dt > 1/(50 max_rate) or t_max < 10/kappa_s,
/// NumericalError on a non-finite amplitude.
Trajectory integrate(const AmplitudeEquations& equations, const OracleSettings& settings);

Trajectory integrate_amplitudes(const JointQubitState& state, const LambdaSystem& system,
                                const CavityParams& cavity, const EffectiveDetunings& dets,
                                const OracleSettings& settings);

/// Dark/bright probabilities for an arbitrary atomic analysis basis (alpha_p, beta_p).
OracleReport time_domain_probabilities(const Trajectory& traj, cplx alpha_p, cplx beta_p);
OracleReport time_domain_probabilities(const Trajectory& traj);

double conservation_check(const OracleReport& report);

/// Richardson extrapolation of the oracle in kappa_s -> 0, using kappa_s,
/// kappa_s/2, ..., kappa_s/2^(levels-1). The closed form is this limit.
struct AdiabaticEstimate {
  double p_dark = 0.0;
  double p_bright = 0.0;
  double max_conservation_residual = 0.0;
};

AdiabaticEstimate adiabatic_limit(const JointQubitState& state, const LambdaSystem& system,
                                  const CavityParams& cavity, const EffectiveDetunings& dets,
                                  const OracleSettings& base, int levels = 3);

void write_trajectory(std::ostream& out, const Trajectory& traj);

// Closed-form versus time-domain comparison over a batch of configurations.

struct OracleCase {
  JointQubitState state;
  LambdaSystem system;
  CavityParams cavity;
  DriveSettings drive;
};

/// Randomised configurations with complex couplings, non-zero detunings and
/// field; even indices are symmetric (|g_down| = |g_up|), odd indices asymmetric.
/// Rates are drawn within a decade of kappa_t so that a trajectory stays cheap.
std::vector<OracleCase> random_oracle_cases(std::size_t count, std::uint64_t seed);

struct OracleComparison {
  double closed_dark = 0.0;
  double closed_bright = 0.0;
  OracleReport oracle;
  double dev_dark = 0.0;    // |oracle - closed| at the configured kappa_s
  double dev_bright = 0.0;
  bool extrapolated = false;
  double extrap_dev_dark = 0.0;  // |adiabatic_limit - closed|
  double extrap_dev_bright = 0.0;
};

struct OracleSuiteOptions {
  double seed_ratio = default_seed_ratio;
  bool extrapolate = false;
  int extrapolation_levels = 3;
};

OracleComparison compare_with_closed_form(const OracleCase& c, const OracleSuiteOptions& options);

/// Runs the cases concurrently (OpenMP); results are in input order.
std::vector<OracleComparison> run_oracle_suite(std::span<const OracleCase> cases,
                                               const OracleSuiteOptions& options);

/// Sequential reference for run_oracle_suite.
std::vector<OracleComparison> run_oracle_suite_serial(std::span<const OracleCase> cases,
                                                      const OracleSuiteOptions& options);

}  // namespace sprint
