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

// Reference implementations used only by the tests. Each one is written from
// the published expressions or from first principles, without calling into
// the library's closed form.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "sprint/model.hpp"

namespace reference {

using sprint::cplx;

inline constexpr cplx I{0.0, 1.0};

// Exact fractions for angular-momentum bookkeeping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational(long long n = 0, long long d = 1) : num(n), den(d) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) num = -num, den = -den;
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
inline Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
inline Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
inline Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
inline bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }

/// g_J from doubled quantum numbers (2S, 2L, 2J), all arithmetic exact.
inline Rational lande_rational(long long two_s, long long two_l, long long two_j) {
  const auto x_x1 = [](long long two_x) { return Rational(two_x, 2) * Rational(two_x + 2, 2); };
  return Rational(3, 2) + (x_x1(two_s) - x_x1(two_l)) / (Rational(2) * x_x1(two_j));
}

inline long long doubled(double x) {
  const double d = 2.0 * x;
  if (std::abs(d - std::round(d)) > 1e-12) throw std::invalid_argument("not a half-integer");
  return std::llround(d);
}

struct Probabilities {
  double dark = 0.0;
  double bright = 0.0;
};

/// Final-line closed forms of the dark/bright port probabilities, typed in term
/// by term. The dark-port prefactors alpha'^2, beta'^2 are read as moduli; the
/// bright-port lines already carry explicit conjugates.
inline Probabilities published_closed_form(const sprint::JointQubitState& s,
                                           const sprint::LambdaSystem& sys,
                                           const sprint::CavityParams& cav,
                                           const sprint::EffectiveDetunings& d) {
  const double kt = cav.kappa_t();
  const double kex = cav.kappa_ex;
  const cplx dd = kt + I * d.delta_down;
  const cplx du = kt + I * d.delta_up;
  const double g2d = std::norm(sys.g_down);
  const double g2u = std::norm(sys.g_up);
  const cplx ct = (g2d / dd + g2u / du) / (2.0 * (sys.gamma + I * d.delta_e));
  const cplx sat = 2.0 * ct / (1.0 + 2.0 * ct);
  const cplx den = g2d * du + g2u * dd;

  const cplx a = s.alpha, b = s.beta, ap = s.alpha_p, bp = s.beta_p;
  const cplx num_down = a * ap * g2d * du + b * bp * std::conj(sys.g_down) * std::conj(sys.g_up) * dd;
  const cplx num_up = a * ap * sys.g_down * sys.g_up * du + b * bp * g2u * dd;
  const cplx r_down = 1.0 - 2.0 * kex / dd;
  const cplx r_up = 1.0 - 2.0 * kex / du;
  const cplx ring_down = 2.0 * kex / dd * sat * num_down / den;
  const cplx ring_up = 2.0 * kex / du * sat * num_up / den;

  Probabilities p;
  p.dark = std::norm(ap) * std::norm(a * ap * r_down + b * bp * r_up + ring_down) +
           std::norm(bp) * std::norm(a * ap * r_down + b * bp * r_up + ring_up);
  p.bright = std::norm(a * ap * std::conj(bp) * r_down - b * std::norm(ap) * r_up +
                       std::conj(bp) * ring_down) +
             std::norm(a * std::norm(bp) * r_down - b * std::conj(ap) * bp * r_up -
                       std::conj(ap) * ring_up);
  return p;
}

using Matrix5 = std::array<std::array<cplx, 5>, 5>;
using Vector5 = std::array<cplx, 5>;

/// Gaussian elimination with partial pivoting.
inline Vector5 solve(Matrix5 m, Vector5 rhs) {
  for (std::size_t col = 0; col < 5; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 5; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) == 0.0) throw std::domain_error("singular system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < 5; ++r) {
      const cplx f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < 5; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  Vector5 x{};
  for (std::size_t i = 5; i-- > 0;) {
    cplx acc = rhs[i];
    for (std::size_t k = i + 1; k < 5; ++k) acc -= m[i][k] * x[k];
    x[i] = acc / m[i][i];
  }
  return x;
}

/// Drive-free coupling matrix R of dc/dt = -R c + drive e^{-kappa_s t}, built
/// row by row from the five amplitude equations.
inline Matrix5 coupling_matrix(const sprint::LambdaSystem& sys, const sprint::CavityParams& cav,
                               const sprint::EffectiveDetunings& d) {
  Matrix5 r{};
  const cplx dd = cav.kappa_t() + I * d.delta_down;
  const cplx du = cav.kappa_t() + I * d.delta_up;
  r[0][0] = dd;
  r[0][4] = I * std::conj(sys.g_down);
  r[1][1] = dd;
  r[2][2] = du;
  r[3][3] = du;
  r[3][4] = I * sys.g_up;
  r[4][0] = I * sys.g_down;
  r[4][3] = I * std::conj(sys.g_up);
  r[4][4] = sys.gamma + I * d.delta_e;
  return r;
}

inline Vector5 drive_vector(const sprint::JointQubitState& s, double kappa_s, double kappa_ex) {
  const double k = -2.0 * std::sqrt(kappa_s * kappa_ex);
  return {k * s.alpha * s.alpha_p, k * s.alpha * s.beta_p, k * s.beta * s.alpha_p,
          k * s.beta * s.beta_p, 0.0};
}

/// Envelope prefactor x with c(t) = x e^{-kappa_s t} solving the driven equations
/// exactly: (R - kappa_s) x = drive. With `adiabatic` the kappa_s shift is dropped,
/// which is the steady-state approximation.
inline Vector5 envelope_prefactors(const sprint::JointQubitState& s, const sprint::LambdaSystem& sys,
                                   const sprint::CavityParams& cav,
                                   const sprint::EffectiveDetunings& d, double kappa_s,
                                   bool adiabatic) {
  Matrix5 m = coupling_matrix(sys, cav, d);
  if (!adiabatic)
    for (std::size_t i = 0; i < 5; ++i) m[i][i] -= kappa_s;
  return solve(m, drive_vector(s, kappa_s, cav.kappa_ex));
}

/// Port probabilities of a pulse whose cavity amplitudes follow x e^{-kappa_s t}:
/// integrated output |seed + sqrt(kappa_ex/kappa_s) x|^2 per channel, then the
/// beam splitter defined by the atomic qubit.
inline Probabilities ports_from_prefactors(const sprint::JointQubitState& s, const Vector5& x,
                                           double kappa_ex, double kappa_s) {
  const double r = std::sqrt(kappa_ex / kappa_s);
  const cplx a_down = s.alpha * s.alpha_p + r * x[0];
  const cplx a_up = s.alpha * s.beta_p + r * x[1];
  const cplx b_down = s.beta * s.alpha_p + r * x[2];
  const cplx b_up = s.beta * s.beta_p + r * x[3];
  Probabilities p;
  p.dark = std::norm(s.alpha_p * a_down + s.beta_p * b_down) +
           std::norm(s.alpha_p * a_up + s.beta_p * b_up);
  p.bright = std::norm(std::conj(s.beta_p) * a_down - std::conj(s.alpha_p) * b_down) +
             std::norm(std::conj(s.beta_p) * a_up - std::conj(s.alpha_p) * b_up);
  return p;
}

/// Effective detunings computed directly from the Zeeman shifts.
inline sprint::EffectiveDetunings zeeman_detunings(const sprint::DriveSettings& drive,
                                                   const sprint::LambdaSystem& sys) {
  const double mu = 2.0 * M_PI * 1.3996e6;
  const double wj = mu * sys.lande_lower * drive.b_field;
  const double wjp = mu * sys.lande_upper * drive.b_field;
  return {drive.delta_c - sys.m_down * wj, drive.delta_c - sys.m_up * wj,
          drive.delta_a - sys.m_e * wjp};
}

inline double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace reference
