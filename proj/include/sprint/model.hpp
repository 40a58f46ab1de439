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
#include <complex>
#include <optional>
#include <utility>

#include "sprint/units.hpp"

namespace sprint {

using cplx = std::complex<double>;

/// Three-level emitter. g_down couples |down>-|e> through cavity mode a,
/// g_up couples |up>-|e> through mode b. Rates in rad/s; magnetic quantum
/// numbers are real so that birefringent splittings can be folded into them.
struct LambdaSystem {
  cplx g_down{};
  cplx g_up{};
  double gamma = 0.0;
  double m_down = -1.0;
  double m_up = 1.0;
  double m_e = 0.0;
  double lande_lower = 1.0;
  double lande_upper = 1.0;

  void validate() const;
};

struct CavityParams {
  double kappa_ex = 0.0;
  double kappa_i = 0.0;

  double kappa_t() const { return kappa_ex + kappa_i; }
  void validate() const;
};

struct DriveSettings {
  double delta_c = 0.0;
  double delta_a = 0.0;
  double b_field = 0.0;  // gauss
  double kappa_s = 0.0;  // seeding-cavity decay, only used by the time-domain oracle
};

struct EffectiveDetunings {
  double delta_down = 0.0;
  double delta_up = 0.0;
  double delta_e = 0.0;
};

/// Photonic qubit alpha|a> + beta|b> and atomic qubit alpha_p|down> + beta_p|up>.
struct JointQubitState {
  cplx alpha{1.0};
  cplx beta{};
  cplx alpha_p{1.0};
  cplx beta_p{};

  static JointQubitState from_bloch(double theta, double phi, double theta_p, double phi_p);
  static JointQubitState poles(bool photon_in_a, bool atom_down);

  bool is_normalized(double tol = 1e-12) const;
  void validate() const;
};

/// Envelope prefactors c_k(0); the full amplitude is c_k(0) exp(-kappa_s t).
/// Index order: 0 = |1_a, down>, 1 = |1_a, up>, 2 = |1_b, down>, 3 = |1_b, up>, 4 = |e>.
struct SteadyStateAmplitudes {
  std::array<cplx, 5> c{};

  const cplx& operator[](std::size_t k) const { return c[k]; }
};

struct GateOutcome {
  double p_dark = 0.0;
  double p_bright = 0.0;
  double efficiency = 0.0;
  std::optional<double> fidelity;  // empty when no photon leaves the cavity
};

/// Below this efficiency the fidelity ratio is not reported.
inline constexpr double min_efficiency_for_fidelity = 1e-15;

EffectiveDetunings effective_detunings(const DriveSettings& drive, const LambdaSystem& system);

/// Detuning-dressed total cooperativity. Throws NumericalError when gamma + i delta_e = 0.
cplx complex_cooperativity(const LambdaSystem& system, const CavityParams& cavity,
                           const EffectiveDetunings& dets);

/// Adiabatic (kappa_s -> 0) solution of the amplitude equations.
/// Throws NumericalError when 1 + 2 C_t vanishes.
SteadyStateAmplitudes steady_state_amplitudes(const JointQubitState& state,
                                              const LambdaSystem& system,
                                              const CavityParams& cavity,
                                              const EffectiveDetunings& dets, double kappa_s);

/// Output-field amplitudes per (photon mode, atom state), with the incident
/// seed field normalised to the input amplitudes. Same index order as
/// SteadyStateAmplitudes (first four entries). Independent of kappa_s.
std::array<cplx, 4> output_amplitudes(const JointQubitState& state, const LambdaSystem& system,
                                      const CavityParams& cavity, const EffectiveDetunings& dets);

/// Dark/bright port probabilities, fidelity and efficiency in the adiabatic limit.
GateOutcome gate_outcome(const JointQubitState& state, const LambdaSystem& system,
                         const CavityParams& cavity, const EffectiveDetunings& dets);

/// Folds a birefringent splitting of the two cavity polarisation modes into
/// effective magnetic quantum numbers. Returns {m_down, m_up}.
std::pair<double, double> birefringence_effective_m(double m_down, double m_up, double delta_ch,
                                                    double delta_cv, double omega_j);

}  // namespace sprint
