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

#include "sprint/sampling.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sprint {

namespace {

std::pair<cplx, cplx> haar_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    const cplx a{normal(rng), normal(rng)};
    const cplx b{normal(rng), normal(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-300) return {a / n, b / n};
  }
}

void evaluate_one(const JointQubitState& s, const LambdaSystem& system, const CavityParams& cavity,
                  const EffectiveDetunings& dets, double& f, double& eta) {
  const GateOutcome o = gate_outcome(s, system, cavity, dets);
  f = o.fidelity.value_or(std::numeric_limits<double>::quiet_NaN());
  eta = o.efficiency;
}

void check_spans(std::size_t n, std::span<double> f, std::span<double> eta) {
  if (f.size() != n || eta.size() != n) throw std::invalid_argument("output span size mismatch");
}

}  // namespace

SamplerMode parse_sampler_mode(std::string_view name) {
  if (name == "haar") return SamplerMode::haar;
  if (name == "grid" || name == "real-grid" || name == "real_grid") return SamplerMode::real_grid;
  throw std::invalid_argument("unknown sampler mode '" + std::string(name) + "'");
}

std::string_view to_string(SamplerMode mode) {
  return mode == SamplerMode::haar ? "haar" : "grid";
}

QubitSamples::QubitSamples(std::vector<JointQubitState> states) : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("sample set is empty");
  for (const auto& s : states_) s.validate();
}

QubitSamples QubitSamples::generate(const SamplerSpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("sample count must be positive");
  std::vector<JointQubitState> states;
  if (spec.mode == SamplerMode::haar) {
    std::mt19937_64 rng(spec.seed);
    states.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
      JointQubitState s;
      std::tie(s.alpha, s.beta) = haar_qubit(rng);
      std::tie(s.alpha_p, s.beta_p) = haar_qubit(rng);
      states.push_back(s);
    }
  } else {
    auto n = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(spec.count))));
    states.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double ap = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        JointQubitState s;
        s.alpha = a;
        s.beta = std::sqrt(1.0 - a * a);
        s.alpha_p = ap;
        s.beta_p = std::sqrt(1.0 - ap * ap);
        states.push_back(s);
      }
    }
  }
  return QubitSamples(std::move(states));
}

void FidelityHistogram::add(double fidelity) {
  if (!std::isfinite(fidelity)) return;
  auto bin = static_cast<std::size_t>(std::floor(fidelity * histogram_bins));
  if (fidelity < 0.0) bin = 0;
  if (bin >= histogram_bins) bin = histogram_bins - 1;
  ++counts[bin];
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace kernels {

void evaluate_samples(std::span<const JointQubitState> states, const LambdaSystem& system,
                      const CavityParams& cavity, const EffectiveDetunings& dets,
                      std::span<double> fidelity, std::span<double> efficiency) {
  check_spans(states.size(), fidelity, efficiency);
  const auto n = static_cast<std::ptrdiff_t>(states.size());
  // Exceptions must not escape the parallel region.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      evaluate_one(states[i], system, cavity, dets, fidelity[i], efficiency[i]);
    } catch (...) {
#pragma omp critical(sprint_sample_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void evaluate_samples_serial(std::span<const JointQubitState> states, const LambdaSystem& system,
                             const CavityParams& cavity, const EffectiveDetunings& dets,
                             std::span<double> fidelity, std::span<double> efficiency) {
  check_spans(states.size(), fidelity, efficiency);
  for (std::size_t i = 0; i < states.size(); ++i)
    evaluate_one(states[i], system, cavity, dets, fidelity[i], efficiency[i]);
}

}  // namespace kernels

AverageOutcome summarize(std::span<const double> fidelity, std::span<const double> efficiency) {
  if (fidelity.size() != efficiency.size() || fidelity.empty())
    throw std::invalid_argument("summarize needs equally sized, non-empty inputs");
  AverageOutcome out;
  out.samples = fidelity.size();

  std::vector<double> valid;
  valid.reserve(fidelity.size());
  for (double f : fidelity) {
    if (std::isnan(f)) {
      ++out.undefined_fidelity;
      continue;
    }
    valid.push_back(f);
    out.histogram.add(f);
  }

  auto mean_sigma = [](std::span<const double> v, double& mean, double& sigma) {
    if (v.empty()) {
      mean = sigma = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    mean = pairwise_sum(v) / static_cast<double>(v.size());
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - mean) * (v[i] - mean);
    sigma = std::sqrt(pairwise_sum(dev) / static_cast<double>(v.size()));
  };
  mean_sigma(valid, out.mean_fidelity, out.sigma_fidelity);
  mean_sigma(efficiency, out.mean_efficiency, out.sigma_efficiency);
  return out;
}

AverageOutcome average_gate_outcome(const LambdaSystem& system, const CavityParams& cavity,
                                    const DriveSettings& drive, const QubitSamples& samples) {
  if (samples.size() == 0) throw std::invalid_argument("sample set is empty");
  std::vector<double> f(samples.size());
  std::vector<double> eta(samples.size());
  kernels::evaluate_samples(samples.states(), system, cavity, effective_detunings(drive, system), f,
                            eta);
  return summarize(f, eta);
}

AverageOutcome average_gate_outcome(const LambdaSystem& system, const CavityParams& cavity,
                                    const DriveSettings& drive, const SamplerSpec& spec) {
  return average_gate_outcome(system, cavity, drive, QubitSamples::generate(spec));
}

AverageOutcome average_gate_outcome_serial(const LambdaSystem& system, const CavityParams& cavity,
                                           const DriveSettings& drive,
                                           const QubitSamples& samples) {
  if (samples.size() == 0) throw std::invalid_argument("sample set is empty");
  std::vector<double> f(samples.size());
  std::vector<double> eta(samples.size());
  kernels::evaluate_samples_serial(samples.states(), system, cavity,
                                   effective_detunings(drive, system), f, eta);
  return summarize(f, eta);
}

}  // namespace sprint
