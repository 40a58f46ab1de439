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

#include "sprint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sprint/zeeman.hpp"

namespace sprint {

namespace {

constexpr cplx I{0.0, 1.0};

// RK4 state: amplitudes plus the running flux integrals.
struct Augmented {
  std::array<cplx, 5> c{};
  std::array<OutputGram, 2> gram{};
  double loss_i = 0.0;
  double loss_s = 0.0;
};

Augmented axpy(const Augmented& y, double h, const Augmented& k) {
  Augmented r;
  for (std::size_t i = 0; i < 5; ++i) r.c[i] = y.c[i] + h * k.c[i];
  for (std::size_t b = 0; b < 2; ++b) {
    r.gram[b].aa = y.gram[b].aa + h * k.gram[b].aa;
    r.gram[b].bb = y.gram[b].bb + h * k.gram[b].bb;
    r.gram[b].ab = y.gram[b].ab + h * k.gram[b].ab;
  }
  r.loss_i = y.loss_i + h * k.loss_i;
  r.loss_s = y.loss_s + h * k.loss_s;
  return r;
}

std::array<cplx, 4> channel_outputs(const AmplitudeEquations& eq, double t,
                                    const std::array<cplx, 5>& c) {
  const double seed_amp = std::sqrt(2.0 * eq.kappa_s) * std::exp(-eq.kappa_s * t);
  const double cav_amp = std::sqrt(2.0 * eq.kappa_ex);
  return {seed_amp * eq.seed[0] + cav_amp * c[0], seed_amp * eq.seed[1] + cav_amp * c[1],
          seed_amp * eq.seed[2] + cav_amp * c[2], seed_amp * eq.seed[3] + cav_amp * c[3]};
}

Augmented rhs(const AmplitudeEquations& eq, double t, const Augmented& y) {
  Augmented d;
  eq.derivative(t, y.c, d.c);
  const auto out = channel_outputs(eq, t, y.c);
  // Branch 0: atom in |down> (channels a-down, b-down); branch 1: atom in |up>.
  d.gram[0] = {std::norm(out[0]), std::norm(out[2]), out[0] * std::conj(out[2])};
  d.gram[1] = {std::norm(out[1]), std::norm(out[3]), out[1] * std::conj(out[3])};
  double cavity_pop = 0.0;
  for (std::size_t k = 0; k < 4; ++k) cavity_pop += std::norm(y.c[k]);
  d.loss_i = 2.0 * eq.kappa_i * cavity_pop;
  d.loss_s = 2.0 * eq.gamma * std::norm(y.c[4]);
  return d;
}

double port_dark(const std::array<OutputGram, 2>& gram, cplx ap, cplx bp) {
  double p = 0.0;
  for (const auto& g : gram)
    p += std::norm(ap) * g.aa + std::norm(bp) * g.bb + 2.0 * std::real(ap * std::conj(bp) * g.ab);
  return p;
}

double port_bright(const std::array<OutputGram, 2>& gram, cplx ap, cplx bp) {
  double p = 0.0;
  for (const auto& g : gram)
    p += std::norm(bp) * g.aa + std::norm(ap) * g.bb - 2.0 * std::real(ap * std::conj(bp) * g.ab);
  return p;
}

TrajectoryRow make_row(const AmplitudeEquations& eq, double t, const Augmented& y) {
  TrajectoryRow row;
  row.t = t;
  row.c = y.c;
  row.envelope = std::exp(-eq.kappa_s * t);
  row.flux_dark = port_dark(y.gram, eq.state.alpha_p, eq.state.beta_p);
  row.flux_bright = port_bright(y.gram, eq.state.alpha_p, eq.state.beta_p);
  row.loss_intrinsic = y.loss_i;
  row.loss_spontaneous = y.loss_s;
  return row;
}

}  // namespace

AmplitudeEquations::AmplitudeEquations(const JointQubitState& st, const LambdaSystem& system,
                                       const CavityParams& cavity, const EffectiveDetunings& dets,
                                       double ks)
    : state(st),
      d_down(cavity.kappa_t(), dets.delta_down),
      d_up(cavity.kappa_t(), dets.delta_up),
      g_e(system.gamma, dets.delta_e),
      g_down(system.g_down),
      g_up(system.g_up),
      kappa_s(ks),
      kappa_ex(cavity.kappa_ex),
      kappa_i(cavity.kappa_i),
      gamma(system.gamma) {
  if (!(kappa_s > 0.0)) throw std::invalid_argument("kappa_s must be positive");
  seed = {st.alpha * st.alpha_p, st.alpha * st.beta_p, st.beta * st.alpha_p, st.beta * st.beta_p};
  const double k = -2.0 * std::sqrt(kappa_s * kappa_ex);
  drive = {k * seed[0], k * seed[1], k * seed[2], k * seed[3], cplx{}};
}

double AmplitudeEquations::max_rate() const {
  return std::max({d_down.real(), std::abs(d_down.imag()), std::abs(d_up.imag()), g_e.real(),
                   std::abs(g_e.imag()), std::abs(g_down), std::abs(g_up), kappa_s});
}

void AmplitudeEquations::derivative(double t, const std::array<cplx, 5>& c,
                                    std::array<cplx, 5>& dc) const {
  const double e = std::exp(-kappa_s * t);
  dc[0] = drive[0] * e - d_down * c[0] - I * std::conj(g_down) * c[4];
  dc[1] = drive[1] * e - d_down * c[1];
  dc[2] = drive[2] * e - d_up * c[2];
  dc[3] = drive[3] * e - d_up * c[3] - I * g_up * c[4];
  dc[4] = -I * g_down * c[0] - I * std::conj(g_up) * c[3] - g_e * c[4];
}

OracleSettings default_oracle_settings(const LambdaSystem& system, const CavityParams& cavity,
                                       const EffectiveDetunings& dets, double seed_ratio) {
  if (!(seed_ratio > 0.0)) throw std::invalid_argument("seed ratio must be positive");
  OracleSettings s;
  s.kappa_s = cavity.kappa_t() / seed_ratio;
  s.t_max = default_horizon / s.kappa_s;
  const AmplitudeEquations eq(JointQubitState{}, system, cavity, dets, s.kappa_s);
  const double dt_max = 1.0 / (steps_per_fastest_rate * eq.max_rate());
  const double steps = std::ceil(s.t_max / dt_max);
  s.dt = s.t_max / steps;
  return s;
}

Trajectory integrate(const AmplitudeEquations& eq, const OracleSettings& settings) {
  if (!(settings.dt > 0.0) || !(settings.t_max > 0.0))
    throw std::invalid_argument("dt and t_max must be positive");
  if (settings.dt * steps_per_fastest_rate * eq.max_rate() > 1.0 + 1e-9)
    throw std::invalid_argument("step size exceeds 1/(50 max rate)");
  if (settings.t_max * eq.kappa_s < 10.0 * (1.0 - 1e-12))
    throw std::invalid_argument("horizon shorter than 10/kappa_s");

  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(settings.t_max / settings.dt - 1e-9)));
  const double h = settings.t_max / static_cast<double>(steps);
  const std::size_t stride = std::max<std::size_t>(1, steps / std::max<std::size_t>(1, settings.max_rows));

  Trajectory traj;
  traj.state = eq.state;
  traj.kappa_s = eq.kappa_s;
  traj.dt = h;
  traj.steps = steps;

  Augmented y;
  traj.rows.push_back(make_row(eq, 0.0, y));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h;
    const Augmented k1 = rhs(eq, t, y);
    const Augmented k2 = rhs(eq, t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const Augmented k3 = rhs(eq, t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const Augmented k4 = rhs(eq, t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < 5; ++i)
      y.c[i] += h / 6.0 * (k1.c[i] + 2.0 * k2.c[i] + 2.0 * k3.c[i] + k4.c[i]);
    for (std::size_t b = 0; b < 2; ++b) {
      y.gram[b].aa += h / 6.0 * (k1.gram[b].aa + 2.0 * k2.gram[b].aa + 2.0 * k3.gram[b].aa + k4.gram[b].aa);
      y.gram[b].bb += h / 6.0 * (k1.gram[b].bb + 2.0 * k2.gram[b].bb + 2.0 * k3.gram[b].bb + k4.gram[b].bb);
      y.gram[b].ab += h / 6.0 * (k1.gram[b].ab + 2.0 * k2.gram[b].ab + 2.0 * k3.gram[b].ab + k4.gram[b].ab);
    }
    y.loss_i += h / 6.0 * (k1.loss_i + 2.0 * k2.loss_i + 2.0 * k3.loss_i + k4.loss_i);
    y.loss_s += h / 6.0 * (k1.loss_s + 2.0 * k2.loss_s + 2.0 * k3.loss_s + k4.loss_s);

    for (std::size_t i = 0; i < 5; ++i) {
      if (!std::isfinite(y.c[i].real()) || !std::isfinite(y.c[i].imag()))
        throw NumericalError("non-finite amplitude c" + std::to_string(i + 1) + " at step " +
                             std::to_string(n + 1));
    }
    if ((n + 1) % stride == 0 || n + 1 == steps)
      traj.rows.push_back(make_row(eq, static_cast<double>(n + 1) * h, y));
  }

  traj.gram = y.gram;
  traj.loss_intrinsic = y.loss_i;
  traj.loss_spontaneous = y.loss_s;
  traj.final_c = y.c;
  traj.final_envelope = std::exp(-eq.kappa_s * settings.t_max);
  return traj;
}

Trajectory integrate_amplitudes(const JointQubitState& state, const LambdaSystem& system,
                                const CavityParams& cavity, const EffectiveDetunings& dets,
                                const OracleSettings& settings) {
  return integrate(AmplitudeEquations(state, system, cavity, dets, settings.kappa_s), settings);
}

OracleReport time_domain_probabilities(const Trajectory& traj, cplx alpha_p, cplx beta_p) {
  OracleReport r;
  r.p_dark = port_dark(traj.gram, alpha_p, beta_p);
  r.p_bright = port_bright(traj.gram, alpha_p, beta_p);
  r.p_loss_intrinsic = traj.loss_intrinsic;
  r.p_loss_spontaneous = traj.loss_spontaneous;
  double inside = traj.final_envelope * traj.final_envelope;
  for (const auto& c : traj.final_c) inside += std::norm(c);
  r.p_residual = inside;
  r.horizon_ok = inside <= max_residual_norm;
  r.conservation_residual = conservation_check(r);
  return r;
}

OracleReport time_domain_probabilities(const Trajectory& traj) {
  return time_domain_probabilities(traj, traj.state.alpha_p, traj.state.beta_p);
}

double conservation_check(const OracleReport& r) {
  return std::abs(1.0 - (r.p_dark + r.p_bright + r.p_loss_intrinsic + r.p_loss_spontaneous +
                         r.p_residual));
}

AdiabaticEstimate adiabatic_limit(const JointQubitState& state, const LambdaSystem& system,
                                  const CavityParams& cavity, const EffectiveDetunings& dets,
                                  const OracleSettings& base, int levels) {
  if (levels < 1) throw std::invalid_argument("extrapolation needs at least one level");
  std::vector<double> dark(levels), bright(levels);
  AdiabaticEstimate est;
  for (int j = 0; j < levels; ++j) {
    OracleSettings s = base;
    s.kappa_s = base.kappa_s / std::ldexp(1.0, j);
    s.t_max = base.t_max * std::ldexp(1.0, j);
    s.max_rows = 2;
    const OracleReport r =
        time_domain_probabilities(integrate_amplitudes(state, system, cavity, dets, s));
    dark[j] = r.p_dark;
    bright[j] = r.p_bright;
    est.max_conservation_residual = std::max(est.max_conservation_residual, r.conservation_residual);
  }
  // Neville-style table for an expansion in powers of kappa_s with halving steps.
  for (int i = 1; i < levels; ++i) {
    const double f = std::ldexp(1.0, i);
    for (int j = 0; j + i < levels; ++j) {
      dark[j] = (f * dark[j + 1] - dark[j]) / (f - 1.0);
      bright[j] = (f * bright[j + 1] - bright[j]) / (f - 1.0);
    }
  }
  est.p_dark = dark[0];
  est.p_bright = bright[0];
  return est;
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << "# t_s";
  for (int k = 1; k <= 5; ++k) out << " re_c" << k << " im_c" << k;
  out << " envelope flux_dark flux_bright loss_intrinsic loss_spontaneous\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, " %.8e", v);
    out << buf;
  };
  for (const auto& row : traj.rows) {
    std::snprintf(buf, sizeof buf, "%.8e", row.t);
    out << buf;
    for (const auto& c : row.c) {
      put(c.real());
      put(c.imag());
    }
    put(row.envelope);
    put(row.flux_dark);
    put(row.flux_bright);
    put(row.loss_intrinsic);
    put(row.loss_spontaneous);
    out << '\n';
  }
}

std::vector<OracleCase> random_oracle_cases(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  auto haar = [&]() {
    const cplx a{normal(rng), normal(rng)};
    const cplx b{normal(rng), normal(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return std::pair{a / n, b / n};
  };

  std::vector<OracleCase> cases;
  cases.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    OracleCase c;
    const double kt = from_mhz(uniform(0.5, 2.0));
    c.cavity.kappa_ex = kt * uniform(0.5, 1.0);
    c.cavity.kappa_i = kt - c.cavity.kappa_ex;

    LambdaSystem& s = c.system;
    s.gamma = kt * uniform(0.5, 3.0);
    const double g_down = kt * uniform(0.3, 2.0);
    const double g_up = (i % 2 == 0) ? g_down : kt * uniform(0.3, 2.0);
    s.g_down = std::polar(g_down, uniform(0.0, two_pi));
    s.g_up = std::polar(g_up, uniform(0.0, two_pi));
    if ((i / 2) % 2 == 0) {
      s.m_down = -1.0, s.m_up = 1.0, s.m_e = 0.0, s.lande_lower = 1.0, s.lande_upper = 2.0 / 3.0;
    } else {
      s.m_down = -1.5, s.m_up = 0.5, s.m_e = -0.5, s.lande_lower = 0.8, s.lande_upper = 2.0 / 3.0;
    }

    c.drive.delta_c = kt * uniform(-1.0, 1.0);
    c.drive.delta_a = kt * uniform(-2.0, 2.0);
    c.drive.b_field = kt * uniform(0.05, 0.5) / larmor_frequency(s.lande_lower, 1.0);

    std::tie(c.state.alpha, c.state.beta) = haar();
    std::tie(c.state.alpha_p, c.state.beta_p) = haar();
    cases.push_back(c);
  }
  return cases;
}

OracleComparison compare_with_closed_form(const OracleCase& c, const OracleSuiteOptions& options) {
  const EffectiveDetunings dets = effective_detunings(c.drive, c.system);
  const GateOutcome closed = gate_outcome(c.state, c.system, c.cavity, dets);
  const OracleSettings settings = default_oracle_settings(c.system, c.cavity, dets, options.seed_ratio);

  OracleComparison r;
  r.closed_dark = closed.p_dark;
  r.closed_bright = closed.p_bright;
  r.oracle = time_domain_probabilities(integrate_amplitudes(c.state, c.system, c.cavity, dets, settings));
  r.dev_dark = std::abs(r.oracle.p_dark - closed.p_dark);
  r.dev_bright = std::abs(r.oracle.p_bright - closed.p_bright);
  if (options.extrapolate) {
    const AdiabaticEstimate est = adiabatic_limit(c.state, c.system, c.cavity, dets, settings,
                                                  options.extrapolation_levels);
    r.extrapolated = true;
    r.extrap_dev_dark = std::abs(est.p_dark - closed.p_dark);
    r.extrap_dev_bright = std::abs(est.p_bright - closed.p_bright);
  }
  return r;
}

std::vector<OracleComparison> run_oracle_suite(std::span<const OracleCase> cases,
                                               const OracleSuiteOptions& options) {
  std::vector<OracleComparison> out(cases.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = compare_with_closed_form(cases[i], options);
    } catch (...) {
#pragma omp critical(sprint_oracle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<OracleComparison> run_oracle_suite_serial(std::span<const OracleCase> cases,
                                                      const OracleSuiteOptions& options) {
  std::vector<OracleComparison> out;
  out.reserve(cases.size());
  for (const auto& c : cases) out.push_back(compare_with_closed_form(c, options));
  return out;
}

}  // namespace sprint
