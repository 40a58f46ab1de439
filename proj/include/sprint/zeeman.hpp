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

namespace sprint {

/// Landé g-factor of a fine-structure manifold, g_J = 3/2 + [S(S+1) - L(L+1)] / (2J(J+1)).
/// Throws std::invalid_argument for J <= 0 or negative quantum numbers.
double lande_factor(double s, double l, double j);

/// Larmor angular frequency (rad/s) of a manifold with Landé factor g_J in a field of b_gauss.
double larmor_frequency(double lande, double b_gauss);

}  // namespace sprint
