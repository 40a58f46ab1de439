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

#include "sprint/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sprint/zeeman.hpp"

namespace sprint {

namespace {

constexpr cplx I{0.0, 1.0};

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Amplitude-equation coefficients shared by the steady-state and output routines.
struct Dressed {
  cplx d_down;   // kappa_t + i delta_down
  cplx d_up;     // kappa_t + i delta_up
  cplx g_e;      // gamma + i delta_e
  double g2_down;
  double g2_up;
  cplx den;      // |g_down|^2 d_up + |g_up|^2 d_down
  cplx resolvent;  // g_e d_down d_up + den, zero iff 1 + 2 C_t = 0
};

Dressed dress(const LambdaSystem& s, const CavityParams& cav, const EffectiveDetunings& d) {
  Dressed r;
  r.d_down = {cav.kappa_t(), d.delta_down};
  r.d_up = {cav.kappa_t(), d.delta_up};
  r.g_e = {s.gamma, d.delta_e};
  r.g2_down = std::norm(s.g_down);
  r.g2_up = std::norm(s.g_up);
  r.den = r.g2_down * r.d_up + r.g2_up * r.d_down;
  const cplx bare = r.g_e * r.d_down * r.d_up;
  r.resolvent = bare + r.den;
  if (std::abs(r.resolvent) <= 1e-14 * (std::abs(bare) + std::abs(r.den)))
    throw NumericalError("singular configuration: 1 + 2 C_t = 0");
  return r;
}

// c_k(0) / (2 sqrt(kappa_s kappa_ex)).
std::array<cplx, 5> unit_prefactors(const JointQubitState& st, const LambdaSystem& s,
                                    const Dressed& r) {
  const cplx aa = st.alpha * st.alpha_p;
  const cplx bb = st.beta * st.beta_p;
  // 2C/(1+2C) * N/den collapses to N/resolvent, which stays finite as g -> 0.
  const cplx n_down = aa * r.g2_down * r.d_up + bb * std::conj(s.g_down) * std::conj(s.g_up) * r.d_down;
  const cplx n_up = aa * s.g_down * s.g_up * r.d_up + bb * r.g2_up * r.d_down;
  const cplx n_e = aa * s.g_down * r.d_up + bb * std::conj(s.g_up) * r.d_down;
  std::array<cplx, 5> w;
  w[0] = (n_down / r.resolvent - aa) / r.d_down;
  w[1] = -st.alpha * st.beta_p / r.d_down;
  w[2] = -st.alpha_p * st.beta / r.d_up;
  w[3] = (n_up / r.resolvent - bb) / r.d_up;
  w[4] = I * n_e / r.resolvent;
  return w;
}

}  // namespace

void LambdaSystem::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be positive");
  if (!finite(g_down) || !finite(g_up))
    throw std::invalid_argument("couplings must be finite");
  if (std::abs(g_down) == 0.0 && std::abs(g_up) == 0.0)
    throw std::invalid_argument("at least one coupling must be non-zero");
  if (m_down == m_up)
    throw std::invalid_argument("ground sublevels must have distinct m");
}

void CavityParams::validate() const {
  if (!(kappa_ex > 0.0) || !std::isfinite(kappa_ex))
    throw std::invalid_argument("kappa_ex must be positive");
  if (!(kappa_i >= 0.0) || !std::isfinite(kappa_i))
    throw std::invalid_argument("kappa_i must be non-negative");
}

JointQubitState JointQubitState::from_bloch(double theta, double phi, double theta_p,
                                            double phi_p) {
  JointQubitState s;
  s.alpha = std::cos(theta / 2);
  s.beta = std::sin(theta / 2) * std::exp(I * phi);
  s.alpha_p = std::cos(theta_p / 2);
  s.beta_p = std::sin(theta_p / 2) * std::exp(I * phi_p);
  return s;
}

JointQubitState JointQubitState::poles(bool photon_in_a, bool atom_down) {
  JointQubitState s;
  s.alpha = photon_in_a ? 1.0 : 0.0;
  s.beta = photon_in_a ? 0.0 : 1.0;
  s.alpha_p = atom_down ? 1.0 : 0.0;
  s.beta_p = atom_down ? 0.0 : 1.0;
  return s;
}

bool JointQubitState::is_normalized(double tol) const {
  return std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol &&
         std::abs(std::norm(alpha_p) + std::norm(beta_p) - 1.0) <= tol;
}

void JointQubitState::validate() const {
  if (!is_normalized()) throw std::invalid_argument("qubit amplitudes are not normalised");
}

EffectiveDetunings effective_detunings(const DriveSettings& drive, const LambdaSystem& system) {
  const double w_lower = larmor_frequency(system.lande_lower, drive.b_field);
  const double w_upper = larmor_frequency(system.lande_upper, drive.b_field);
  return {drive.delta_c - system.m_down * w_lower, drive.delta_c - system.m_up * w_lower,
          drive.delta_a - system.m_e * w_upper};
}

cplx complex_cooperativity(const LambdaSystem& system, const CavityParams& cavity,
                           const EffectiveDetunings& dets) {
  const cplx g_e{system.gamma, dets.delta_e};
  if (g_e == cplx{}) throw NumericalError("gamma + i delta_e vanishes");
  const cplx d_down{cavity.kappa_t(), dets.delta_down};
  const cplx d_up{cavity.kappa_t(), dets.delta_up};
  return (std::norm(system.g_down) / d_down + std::norm(system.g_up) / d_up) / (2.0 * g_e);
}

SteadyStateAmplitudes steady_state_amplitudes(const JointQubitState& state,
                                              const LambdaSystem& system,
                                              const CavityParams& cavity,
                                              const EffectiveDetunings& dets, double kappa_s) {
  if (!(kappa_s > 0.0)) throw std::invalid_argument("kappa_s must be positive");
  const auto w = unit_prefactors(state, system, dress(system, cavity, dets));
  const double scale = 2.0 * std::sqrt(kappa_s * cavity.kappa_ex);
  SteadyStateAmplitudes out;
  for (std::size_t k = 0; k < 5; ++k) out.c[k] = scale * w[k];
  return out;
}

std::array<cplx, 4> output_amplitudes(const JointQubitState& state, const LambdaSystem& system,
                                      const CavityParams& cavity, const EffectiveDetunings& dets) {
  const auto w = unit_prefactors(state, system, dress(system, cavity, dets));
  const double k2 = 2.0 * cavity.kappa_ex;
  return {state.alpha * state.alpha_p + k2 * w[0], state.alpha * state.beta_p + k2 * w[1],
          state.beta * state.alpha_p + k2 * w[2], state.beta * state.beta_p + k2 * w[3]};
}

GateOutcome gate_outcome(const JointQubitState& state, const LambdaSystem& system,
                         const CavityParams& cavity, const EffectiveDetunings& dets) {
  const auto a = output_amplitudes(state, system, cavity, dets);
  const cplx ap = state.alpha_p;
  const cplx bp = state.beta_p;
  // Beam splitter with the atomic qubit as reflection/transmission coefficients.
  GateOutcome out;
  out.p_dark = std::norm(ap * a[0] + bp * a[2]) + std::norm(ap * a[1] + bp * a[3]);
  out.p_bright = std::norm(std::conj(bp) * a[0] - std::conj(ap) * a[2]) +
                 std::norm(std::conj(bp) * a[1] - std::conj(ap) * a[3]);
  if (!std::isfinite(out.p_dark) || !std::isfinite(out.p_bright))
    throw NumericalError("non-finite gate outcome");
  out.efficiency = out.p_dark + out.p_bright;
  if (out.efficiency >= min_efficiency_for_fidelity)
    out.fidelity = out.p_bright / out.efficiency;
  return out;
}

std::pair<double, double> birefringence_effective_m(double m_down, double m_up, double delta_ch,
                                                    double delta_cv, double omega_j) {
  const double split = delta_cv - delta_ch;
  if (split == 0.0) return {m_down, m_up};
  if (omega_j == 0.0)
    throw std::invalid_argument("a birefringent splitting cannot be absorbed at zero field");
  const double shift = split / (2.0 * omega_j);
  return {m_down + shift, m_up - shift};
}

}  // namespace sprint
