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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sprint/model.hpp"

namespace sprint {

enum class CavityFlavor { conventional, fiber };
CavityFlavor parse_flavor(std::string_view name);
std::string_view to_string(CavityFlavor f);

/// How the relative Clebsch-Gordan sign enters g_up. sign_absorbed folds it
/// into the phase of mode b so that g_up = conj(g_down) holds for equal strengths.
enum class ModePhase { sign_absorbed, signed_physical };
ModePhase parse_mode_phase(std::string_view name);
std::string_view to_string(ModePhase p);

struct Manifold {
  double s = 0.5;
  double l = 0.0;
  double j = 0.5;
};

struct MirrorSpec {
  double length_m = 0.0;
  double t1_ppm = 0.0;           // input-output mirror
  double t2_plus_loss_ppm = 0.0;  // back mirror plus absorption and scattering

  void validate() const;
};

struct MirrorCavity {
  CavityParams cavity;
  double finesse = 0.0;
};

/// kappa_ex = c T1 / (4 l), kappa_i = c (T2 + L) / (4 l), finesse = 2 pi / (T1 + T2 + L).
MirrorCavity cavity_from_mirrors(const MirrorSpec& spec);

/// Inverse of the kappa_ex relation, in ppm.
double transmission_from_kappa(double kappa, double length_m);

struct IonPreset {
  std::string id;
  std::string transition;
  double wavelength_nm = 0.0;
  double gamma = 0.0;           // rad/s, used by the model
  double gamma_nominal = 0.0;   // rad/s, rounded value of the design tables
  double gamma_measured = 0.0;  // rad/s, literature value of the transition
  double chi_down = 0.0;        // signed Clebsch-Gordan coefficients
  double chi_up = 0.0;
  double m_down = 0.0, m_up = 0.0, m_e = 0.0;
  Manifold lower, upper;
  double lande_lower = 0.0;     // effective g-factor used for Zeeman shifts
  double lande_upper = 0.0;
  bool lande_lower_is_catalog_default = false;
  std::optional<double> gamma_transition;  // rad/s, cavity-enhanced rate of the gate transition
  std::optional<double> gamma_other;       // rad/s, decay to other manifolds
  std::optional<double> metastable_lifetime_s;
};

struct Preset {
  IonPreset ion;
  CavityFlavor flavor = CavityFlavor::conventional;
  ModePhase phase = ModePhase::sign_absorbed;
  LambdaSystem system;
  CavityParams cavity;
  MirrorSpec mirrors;
};

/// Known ids: Yb171, Ca40, Ba138. Throws std::invalid_argument otherwise.
Preset preset(std::string_view ion_id, CavityFlavor flavor,
              ModePhase phase = ModePhase::sign_absorbed);

std::vector<std::string> preset_ids();

/// eta * Gamma / (Gamma + gamma_other).
double postselected_efficiency(double eta, double gamma_transition, double gamma_other);

/// 3 max(1/kappa_t, 1/(C gamma)), in seconds.
double gate_time_estimate(double kappa_t, double cooperativity, double gamma);

}  // namespace sprint
