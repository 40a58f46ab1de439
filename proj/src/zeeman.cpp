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

#include "sprint/zeeman.hpp"

#include <stdexcept>

#include "sprint/units.hpp"

namespace sprint {

double lande_factor(double s, double l, double j) {
  if (!(j > 0.0)) throw std::invalid_argument("Lande factor needs J > 0");
  if (s < 0.0 || l < 0.0) throw std::invalid_argument("negative angular momentum");
  return 1.5 + (s * (s + 1.0) - l * (l + 1.0)) / (2.0 * j * (j + 1.0));
}

double larmor_frequency(double lande, double b_gauss) {
  return two_pi * bohr_magneton_hz_per_gauss * lande * b_gauss;
}

}  // namespace sprint
