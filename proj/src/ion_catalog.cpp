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

#include "sprint/ion_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sprint/zeeman.hpp"

namespace sprint {

CavityFlavor parse_flavor(std::string_view name) {
  if (name == "conventional") return CavityFlavor::conventional;
  if (name == "fiber") return CavityFlavor::fiber;
  throw std::invalid_argument("unknown cavity flavor '" + std::string(name) +
                              "' (conventional|fiber)");
}

std::string_view to_string(CavityFlavor f) {
  return f == CavityFlavor::conventional ? "conventional" : "fiber";
}

ModePhase parse_mode_phase(std::string_view name) {
  if (name == "sign-absorbed" || name == "sign_absorbed") return ModePhase::sign_absorbed;
  if (name == "signed-physical" || name == "signed_physical") return ModePhase::signed_physical;
  throw std::invalid_argument("unknown mode phase '" + std::string(name) +
                              "' (sign-absorbed|signed-physical)");
}

std::string_view to_string(ModePhase p) {
  return p == ModePhase::sign_absorbed ? "sign-absorbed" : "signed-physical";
}

void MirrorSpec::validate() const {
  if (!(length_m > 0.0)) throw std::invalid_argument("mirror spec: length must be positive");
  if (!(t1_ppm > 0.0)) throw std::invalid_argument("mirror spec: T1 must be positive");
  if (!(t2_plus_loss_ppm > 0.0))
    throw std::invalid_argument("mirror spec: T2 + L must be positive");
  if (t1_ppm + t2_plus_loss_ppm >= 1e4)
    throw std::invalid_argument("mirror spec: T1 + T2 + L must stay below 1e4 ppm");
}

MirrorCavity cavity_from_mirrors(const MirrorSpec& spec) {
  spec.validate();
  const double scale = speed_of_light / (4.0 * spec.length_m) * 1e-6;
  MirrorCavity out;
  out.cavity.kappa_ex = scale * spec.t1_ppm;
  out.cavity.kappa_i = scale * spec.t2_plus_loss_ppm;
  out.finesse = two_pi / ((spec.t1_ppm + spec.t2_plus_loss_ppm) * 1e-6);
  return out;
}

double transmission_from_kappa(double kappa, double length_m) {
  if (!(length_m > 0.0)) throw std::invalid_argument("length must be positive");
  return 4.0 * length_m * kappa / speed_of_light * 1e6;
}

namespace {

IonPreset ytterbium() {
  IonPreset p;
  p.id = "Yb171";
  p.transition = "2S1/2(F=1) - 2P1/2(F'=0)";
  p.wavelength_nm = 370.0;
  p.gamma = from_mhz(9.8);
  p.gamma_nominal = from_mhz(10.0);
  p.gamma_measured = p.gamma;
  p.chi_down = 1.0 / std::sqrt(3.0);
  p.chi_up = -1.0 / std::sqrt(3.0);
  p.m_down = -1.0, p.m_up = 1.0, p.m_e = 0.0;
  p.lower = {0.5, 0.0, 0.5};
  p.upper = {0.5, 1.0, 0.5};
  // Hyperfine F=1 level; g_F = 1 is a catalog default, the symmetric analysis runs at B = 0.
  p.lande_lower = 1.0;
  p.lande_lower_is_catalog_default = true;
  p.lande_upper = lande_factor(0.5, 1.0, 0.5);
  return p;
}

IonPreset d_to_p(std::string id, double wavelength, double gamma_measured_mhz, double transition_mhz,
                 double other_mhz, double lifetime_s) {
  IonPreset p;
  p.id = std::move(id);
  p.transition = "2D3/2 - 2P1/2";
  p.wavelength_nm = wavelength;
  p.gamma = from_mhz(10.0);
  p.gamma_nominal = from_mhz(10.0);
  p.gamma_measured = from_mhz(gamma_measured_mhz);
  p.chi_down = std::sqrt(0.5);
  p.chi_up = std::sqrt(1.0 / 6.0);
  p.m_down = -1.5, p.m_up = 0.5, p.m_e = -0.5;
  p.lower = {0.5, 2.0, 1.5};
  p.upper = {0.5, 1.0, 0.5};
  p.lande_lower = lande_factor(0.5, 2.0, 1.5);
  p.lande_upper = lande_factor(0.5, 1.0, 0.5);
  p.gamma_transition = from_mhz(transition_mhz);
  p.gamma_other = from_mhz(other_mhz);
  p.metastable_lifetime_s = lifetime_s;
  return p;
}

}  // namespace

std::vector<std::string> preset_ids() { return {"Yb171", "Ca40", "Ba138"}; }

Preset preset(std::string_view ion_id, CavityFlavor flavor, ModePhase phase) {
  Preset out;
  out.flavor = flavor;
  out.phase = phase;
  const bool conv = flavor == CavityFlavor::conventional;

  double g_down = 0.0, g_up = 0.0;
  if (ion_id == "Yb171") {
    out.ion = ytterbium();
    const double g = from_mhz(conv ? 5.0 : 70.0);
    g_down = out.ion.chi_down * g;
    g_up = out.ion.chi_up * g;
    out.cavity = conv ? CavityParams{from_khz(179.0), from_khz(90.0)}
                      : CavityParams{from_mhz(45.0), from_mhz(30.0)};
    out.mirrors = conv ? MirrorSpec{20e-3, 300.0, 150.0} : MirrorSpec{400e-6, 1500.0, 1000.0};
  } else if (ion_id == "Ca40" || ion_id == "Ba138") {
    out.ion = ion_id == "Ca40" ? d_to_p("Ca40", 866.0, 11.1, 2.5, 10.3, 1.0)
                               : d_to_p("Ba138", 650.0, 9.9, 8.0, 7.2, 18.0);
    // Per-transition couplings are tabulated directly.
    g_down = from_mhz(conv ? 1.4 : 28.0);
    g_up = from_mhz(conv ? 0.82 : 16.0);
    out.cavity = conv ? CavityParams{from_khz(30.0), from_khz(10.0)}
                      : CavityParams{from_mhz(18.0), from_mhz(3.0)};
    out.mirrors = conv ? MirrorSpec{20e-3, 50.0, 17.0} : MirrorSpec{400e-6, 600.0, 100.0};
  } else {
    throw std::invalid_argument("unknown ion preset '" + std::string(ion_id) +
                                "' (Yb171|Ca40|Ba138)");
  }
  if (phase == ModePhase::sign_absorbed) g_up = std::abs(g_up);

  LambdaSystem& s = out.system;
  s.g_down = g_down;
  s.g_up = g_up;
  s.gamma = out.ion.gamma;
  s.m_down = out.ion.m_down;
  s.m_up = out.ion.m_up;
  s.m_e = out.ion.m_e;
  s.lande_lower = out.ion.lande_lower;
  s.lande_upper = out.ion.lande_upper;
  return out;
}

double postselected_efficiency(double eta, double gamma_transition, double gamma_other) {
  if (!(gamma_transition > 0.0)) throw std::invalid_argument("Gamma must be positive");
  if (gamma_other < 0.0) throw std::invalid_argument("gamma_other must be non-negative");
  return eta * gamma_transition / (gamma_transition + gamma_other);
}

double gate_time_estimate(double kappa_t, double cooperativity, double gamma) {
  if (!(kappa_t > 0.0) || !(cooperativity > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("gate time estimate needs positive rates");
  return 3.0 * std::max(1.0 / kappa_t, 1.0 / (cooperativity * gamma));
}

}  // namespace sprint
