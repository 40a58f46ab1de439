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
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "sprint/model.hpp"
#include "sprint/sampling.hpp"
#include "sprint/simplex.hpp"

namespace sprint {

// Analytic optimum for symmetric systems (|g_down| = |g_up|, zero field).

inline constexpr double infinite_coupling = std::numeric_limits<double>::infinity();

/// C_i = |g|^2 / (kappa_i gamma). Infinite when kappa_i = 0.
/// Throws std::invalid_argument unless |g_down| = |g_up| (relative 1e-9).
double intrinsic_cooperativity(double kappa_i, const LambdaSystem& system);

/// kappa_i sqrt(1 + 2 C_i); infinite_coupling when kappa_i = 0.
double optimal_coupling(double kappa_i, const LambdaSystem& system);

/// (C_i / (sqrt(1 + 2 C_i) + 1 + C_i))^2.
double eta_max(double c_i);

enum class Branch { plus, minus };
Branch parse_branch(std::string_view name);
std::string_view to_string(Branch b);

struct DetuningPair {
  double delta_c = 0.0;
  double delta_a = 0.0;
};

struct SymmetricOptimum {
  DetuningPair plus;
  DetuningPair minus;
  double kappa_ex_opt = 0.0;
  double eta_max = 0.0;
  double intrinsic_cooperativity = 0.0;

  const DetuningPair& branch(Branch b) const { return b == Branch::plus ? plus : minus; }
};

/// Detunings that null the dark port for every input.
/// Throws std::out_of_range when kappa_ex > kappa_ex_opt (no real solution)
/// or kappa_ex < kappa_i.
SymmetricOptimum symmetric_optimal_detunings(const CavityParams& cavity, const LambdaSystem& system);

struct LandmarkParameters {
  double intrinsic_cooperativity = 0.0;
  double kappa_ex_I = 0.0;    // largest optimal cavity detuning
  double kappa_ex_II = 0.0;   // impedance matching
  double kappa_ex_III = 0.0;  // C_t = 1; NaN unless C_i > 1
  bool kappa_ex_III_defined = false;
  double delta_c_I = 0.0;
  double delta_a_I = 0.0;
  double fidelity_III = 0.0;
  double eta_II = 0.0;
  double eta_III = 0.0;
};

LandmarkParameters landmark_parameters(double kappa_i, const LambdaSystem& system);

/// Large-C_t approximation A / (1 + A), A = |kappa_i/kappa_ex - 1/(2 C_t)|^2.
double fidelity_gain_estimate(double kappa_i, double kappa_ex, double c_t);

// Numerical optimisation of the sample-averaged fidelity.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double clamp(double v) const;
};

struct OptimizationBounds {
  Interval delta_c;  // rad/s
  Interval delta_a;  // rad/s
  Interval b_field;  // gauss

  void validate() const;
};

inline constexpr double default_field_bound = 50.0;  // gauss

/// delta_c within +-3 kappa_t, delta_a within +-10 gamma, B within +-50 G or pinned to 0.
OptimizationBounds default_bounds(const LambdaSystem& system, const CavityParams& cavity,
                                  bool pin_field);

struct OptimizerOptions {
  std::size_t grid_points = 21;  // per free axis
  std::size_t starts = 5;
  // With real couplings and bounds symmetric about zero, F(dc, da, B) = F(-dc, -da, -B)
  // over the sampled population; search only dc >= 0.
  bool fold_mirror = true;
  SimplexOptions simplex{600, 1e-7, 1e-12};  // x_tol in box-normalised units
};

struct OptimizationResult {
  double delta_c_opt = 0.0;
  double delta_a_opt = 0.0;
  double b_opt = 0.0;
  double mean_fidelity = 0.0;
  double sigma_fidelity = 0.0;
  double mean_efficiency = 0.0;
  double sigma_efficiency = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;  // false when nothing beat the baseline

  AverageOutcome outcome;   // at the optimum
  AverageOutcome baseline;  // at (0, 0, 0) clamped into the bounds
  DriveSettings baseline_drive;
};

/// Grid pre-scan (grid points run concurrently) followed by Nelder-Mead from
/// the best grid cells. Every evaluation uses the same samples. Never returns
/// a mean fidelity below the baseline.
OptimizationResult optimize_asymmetric(const LambdaSystem& system, const CavityParams& cavity,
                                       const OptimizationBounds& bounds,
                                       const QubitSamples& samples,
                                       const OptimizerOptions& options = {});

OptimizationResult optimize_asymmetric(const LambdaSystem& system, const CavityParams& cavity,
                                       const OptimizationBounds& bounds, const SamplerSpec& spec,
                                       const OptimizerOptions& options = {});

/// Mean fidelity over the samples, NaN when no sample emits a photon.
double mean_fidelity(const LambdaSystem& system, const CavityParams& cavity,
                     const DriveSettings& drive, std::span<const JointQubitState> states);

// Coupling sweeps.

enum class SweepMethod { none, analytic, numeric };
std::string_view to_string(SweepMethod m);

struct SweepRow {
  double kappa_ex = 0.0;
  SweepMethod method = SweepMethod::none;
  double delta_c_opt = 0.0;
  double delta_a_opt = 0.0;
  double b_opt = 0.0;
  double fidelity_opt = 0.0;
  double sigma_fidelity_opt = 0.0;
  double efficiency_opt = 0.0;
  double fidelity_0 = 0.0;
  double sigma_fidelity_0 = 0.0;
  double efficiency_0 = 0.0;
};

struct SweepOptions {
  bool optimize = true;
  Branch branch = Branch::plus;
  bool pin_field = false;
  OptimizerOptions optimizer;
};

/// kappa_ex values from lo to hi inclusive; log spacing requires lo > 0.
std::vector<double> coupling_grid(double lo, double hi, std::size_t points, bool log_spacing);

/// Symmetric systems inside [kappa_i, kappa_ex_opt] take the analytic optimum;
/// every other point runs optimize_asymmetric with default bounds.
std::vector<SweepRow> sweep_coupling(const LambdaSystem& system, double kappa_i,
                                     std::span<const double> kappa_ex_values,
                                     const QubitSamples& samples, const SweepOptions& options);

bool is_symmetric(const LambdaSystem& system);

}  // namespace sprint
