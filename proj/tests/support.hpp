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

#include <cmath>
#include <random>
#include <tuple>
#include <utility>

#include "sprint/model.hpp"
#include "sprint/units.hpp"

namespace support {

using sprint::cplx;

inline std::pair<cplx, cplx> haar_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const cplx a{n(rng), n(rng)}, b{n(rng), n(rng)};
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return {a / norm, b / norm};
}

inline sprint::JointQubitState random_state(std::mt19937_64& rng) {
  sprint::JointQubitState s;
  std::tie(s.alpha, s.beta) = haar_qubit(rng);
  std::tie(s.alpha_p, s.beta_p) = haar_qubit(rng);
  return s;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct RandomSetup {
  sprint::LambdaSystem system;
  sprint::CavityParams cavity;
  sprint::EffectiveDetunings dets;
};

/// Complex couplings, arbitrary detunings, rates spread over two decades.
inline RandomSetup random_setup(std::mt19937_64& rng) {
  RandomSetup r;
  const double kt = sprint::from_mhz(std::exp(uniform(rng, std::log(0.01), std::log(50.0))));
  r.cavity.kappa_ex = kt * uniform(rng, 0.05, 1.0);
  r.cavity.kappa_i = kt - r.cavity.kappa_ex;
  r.system.gamma = sprint::from_mhz(uniform(rng, 1.0, 20.0));
  r.system.g_down = std::polar(sprint::from_mhz(uniform(rng, 0.0, 60.0)), uniform(rng, 0.0, 6.3));
  r.system.g_up = std::polar(sprint::from_mhz(uniform(rng, 0.1, 60.0)), uniform(rng, 0.0, 6.3));
  r.dets.delta_down = kt * uniform(rng, -5.0, 5.0);
  r.dets.delta_up = kt * uniform(rng, -5.0, 5.0);
  r.dets.delta_e = r.system.gamma * uniform(rng, -10.0, 10.0);
  return r;
}

}  // namespace support
