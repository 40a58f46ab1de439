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
#include <span>
#include <string_view>
#include <vector>

#include "sprint/model.hpp"

namespace sprint {

enum class SamplerMode { haar, real_grid };

SamplerMode parse_sampler_mode(std::string_view name);
std::string_view to_string(SamplerMode mode);

inline constexpr std::size_t default_sample_count = 10'000;
inline constexpr std::uint64_t default_sample_seed = 20'200'417;

struct SamplerSpec {
  SamplerMode mode = SamplerMode::haar;
  std::size_t count = default_sample_count;
  std::uint64_t seed = default_sample_seed;
};

/// A fixed, ordered set of input states. Generated once and reused across
/// parameter points so that comparisons use common random numbers.
class QubitSamples {
 public:
  QubitSamples() = default;
  explicit QubitSamples(std::vector<JointQubitState> states);

  /// haar: both qubits independently uniform on their Bloch spheres.
  /// real_grid: ceil(sqrt(count))^2 cell-centred points (alpha, alpha') in [0,1]^2
  /// with beta, beta' the positive real complements.
  static QubitSamples generate(const SamplerSpec& spec);

  std::span<const JointQubitState> states() const { return states_; }
  std::size_t size() const { return states_.size(); }

 private:
  std::vector<JointQubitState> states_;
};

inline constexpr std::size_t histogram_bins = 50;

struct FidelityHistogram {
  std::array<std::size_t, histogram_bins> counts{};

  static double bin_left(std::size_t i) { return static_cast<double>(i) / histogram_bins; }
  static double bin_right(std::size_t i) { return static_cast<double>(i + 1) / histogram_bins; }
  void add(double fidelity);
};

struct AverageOutcome {
  double mean_fidelity = 0.0;
  double sigma_fidelity = 0.0;
  double mean_efficiency = 0.0;
  double sigma_efficiency = 0.0;
  std::size_t samples = 0;
  std::size_t undefined_fidelity = 0;  // samples with no emitted photon, excluded from F stats
  FidelityHistogram histogram;
};

/// Order-fixed pairwise summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

namespace kernels {

/// Per-sample fidelity and efficiency. Undefined fidelities are written as NaN.
/// OpenMP-parallel over samples; each output slot is written by exactly one iteration.
void evaluate_samples(std::span<const JointQubitState> states, const LambdaSystem& system,
                      const CavityParams& cavity, const EffectiveDetunings& dets,
                      std::span<double> fidelity, std::span<double> efficiency);

/// Sequential reference for evaluate_samples.
void evaluate_samples_serial(std::span<const JointQubitState> states, const LambdaSystem& system,
                             const CavityParams& cavity, const EffectiveDetunings& dets,
                             std::span<double> fidelity, std::span<double> efficiency);

}  // namespace kernels

/// Reduces per-sample values into aggregate statistics (deterministic order).
AverageOutcome summarize(std::span<const double> fidelity, std::span<const double> efficiency);

AverageOutcome average_gate_outcome(const LambdaSystem& system, const CavityParams& cavity,
                                    const DriveSettings& drive, const QubitSamples& samples);

AverageOutcome average_gate_outcome(const LambdaSystem& system, const CavityParams& cavity,
                                    const DriveSettings& drive, const SamplerSpec& spec);

/// Same result as average_gate_outcome, computed without OpenMP.
AverageOutcome average_gate_outcome_serial(const LambdaSystem& system, const CavityParams& cavity,
                                           const DriveSettings& drive,
                                           const QubitSamples& samples);

}  // namespace sprint
