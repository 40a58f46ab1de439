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

#include <numbers>
#include <stdexcept>

namespace sprint {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Bohr magneton over Planck's constant, Hz per gauss.
inline constexpr double bohr_magneton_hz_per_gauss = 1.3996e6;

inline constexpr double speed_of_light = 299'792'458.0;  // m/s

// Every rate is stored as an angular frequency (rad/s). User-facing values
// are ordinary frequencies in MHz.
constexpr double from_mhz(double mhz) { return two_pi * mhz * 1e6; }
constexpr double to_mhz(double rad_per_s) { return rad_per_s / (two_pi * 1e6); }
constexpr double from_khz(double khz) { return two_pi * khz * 1e3; }
constexpr double to_khz(double rad_per_s) { return rad_per_s / (two_pi * 1e3); }

namespace literals {

constexpr double operator""_MHz(long double v) { return from_mhz(static_cast<double>(v)); }
constexpr double operator""_MHz(unsigned long long v) { return from_mhz(static_cast<double>(v)); }
constexpr double operator""_kHz(long double v) { return from_khz(static_cast<double>(v)); }
constexpr double operator""_kHz(unsigned long long v) { return from_khz(static_cast<double>(v)); }

}  // namespace literals

/// Raised when a configuration is numerically singular or a computation
/// produced non-finite values. Input validation failures use
/// std::invalid_argument instead.
class NumericalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sprint
