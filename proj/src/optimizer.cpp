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

#include "sprint/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sprint {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

bool conjugate_pair(const LambdaSystem& s) {
  const double scale = std::max(std::abs(s.g_down), std::abs(s.g_up));
  return std::abs(s.g_up - std::conj(s.g_down)) <= 1e-9 * scale;
}

double mean_fidelity_serial(const LambdaSystem& system, const CavityParams& cavity,
                            const DriveSettings& drive, std::span<const JointQubitState> states) {
  std::vector<double> f(states.size()), eta(states.size());
  try {
    kernels::evaluate_samples_serial(states, system, cavity, effective_detunings(drive, system), f,
                                     eta);
  } catch (const NumericalError&) {
    return nan_v;
  }
  std::vector<double> valid;
  valid.reserve(f.size());
  for (double v : f)
    if (!std::isnan(v)) valid.push_back(v);
  if (valid.empty()) return nan_v;
  return pairwise_sum(valid) / static_cast<double>(valid.size());
}

// Objective for minimisation; unusable points rank last.
double loss(double mean_f) { return std::isnan(mean_f) ? HUGE_VAL : -mean_f; }

struct Axis {
  int index;  // 0: delta_c, 1: delta_a, 2: b_field
  Interval range;
};

DriveSettings drive_from(const std::vector<Axis>& free, const std::vector<double>& u,
                         DriveSettings base) {
  for (std::size_t k = 0; k < free.size(); ++k) {
    const double v = free[k].range.lo + u[k] * free[k].range.width();
    if (free[k].index == 0) base.delta_c = v;
    if (free[k].index == 1) base.delta_a = v;
    if (free[k].index == 2) base.b_field = v;
  }
  return base;
}

bool mirror_symmetric(const LambdaSystem& s, const OptimizationBounds& b) {
  const bool real_g = s.g_down.imag() == 0.0 && s.g_up.imag() == 0.0;
  auto centred = [](const Interval& i) { return i.lo == -i.hi; };
  return real_g && centred(b.delta_c) && centred(b.delta_a) && centred(b.b_field);
}

}  // namespace

double intrinsic_cooperativity(double kappa_i, const LambdaSystem& system) {
  system.validate();
  if (kappa_i < 0.0) throw std::invalid_argument("kappa_i must be non-negative");
  if (!is_symmetric(system))
    throw std::invalid_argument("analytic optimum needs |g_down| = |g_up|");
  const double g2 = std::norm(system.g_down);
  if (kappa_i == 0.0) return g2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return g2 / (kappa_i * system.gamma);
}

double optimal_coupling(double kappa_i, const LambdaSystem& system) {
  const double ci = intrinsic_cooperativity(kappa_i, system);
  if (kappa_i == 0.0) return infinite_coupling;
  return kappa_i * std::sqrt(1.0 + 2.0 * ci);
}

double eta_max(double c_i) {
  if (c_i < 0.0) throw std::invalid_argument("C_i must be non-negative");
  if (std::isinf(c_i)) return 1.0;
  const double r = c_i / (std::sqrt(1.0 + 2.0 * c_i) + 1.0 + c_i);
  return r * r;
}

Branch parse_branch(std::string_view name) {
  if (name == "plus" || name == "+") return Branch::plus;
  if (name == "minus" || name == "-") return Branch::minus;
  throw std::invalid_argument("unknown branch '" + std::string(name) + "' (plus|minus)");
}

std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

constexpr double endpoint_offset = 1e-12;

SymmetricOptimum symmetric_optimal_detunings(const CavityParams& cavity, const LambdaSystem& system) {
  cavity.validate();
  const double ki = cavity.kappa_i;
  const double ci = intrinsic_cooperativity(ki, system);
  if (ki == 0.0) throw std::out_of_range("kappa_i = 0: optimal coupling is unbounded");

  SymmetricOptimum opt;
  opt.intrinsic_cooperativity = ci;
  opt.kappa_ex_opt = ki * std::sqrt(1.0 + 2.0 * ci);
  opt.eta_max = eta_max(ci);

  const double slack = 1e-12 * opt.kappa_ex_opt;
  if (cavity.kappa_ex > opt.kappa_ex_opt + slack)
    throw std::out_of_range("kappa_ex above kappa_ex_opt: no real detuning correction exists");
  if (cavity.kappa_ex < ki - 1e-12 * ki) throw std::out_of_range("kappa_ex below kappa_i");

  // At kappa_ex = kappa_i the correction is only a limit (delta_c -> 0, delta_a -> inf);
  // report the pair just inside the interval, where it is finite.
  const double kex = std::max(cavity.kappa_ex, ki * (1.0 + endpoint_offset));
  // Both factors written in cancellation-free form; each vanishes at kappa_ex_opt.
  const double ki2 = ki * ki, kex2 = kex * kex;
  const double root = ki * std::sqrt(4.0 * kex2 * (1.0 + ci) + ki2 * ci * ci);
  const double radicand = std::max(0.0, (kex2 - ki2) * ((1.0 + 2.0 * ci) * ki2 - kex2)) /
                          (root + kex2 + (1.0 + ci) * ki2);
  const double dc = std::sqrt(radicand);
  if (dc == 0.0) return opt;

  const double s = std::sqrt(4.0 * kex2 / ki2 * (1.0 + ci) + ci * ci);
  const double bracket =
      4.0 * (1.0 + ci) * std::max(0.0, 1.0 + 2.0 * ci - kex2 / ki2) / (2.0 + 3.0 * ci + s);
  const double da = ki * system.gamma / (2.0 * dc) * bracket;
  opt.plus = {dc, da};
  opt.minus = {-dc, -da};
  return opt;
}

LandmarkParameters landmark_parameters(double kappa_i, const LambdaSystem& system) {
  if (!(kappa_i > 0.0)) throw std::invalid_argument("landmarks need kappa_i > 0");
  const double c = intrinsic_cooperativity(kappa_i, system);
  LandmarkParameters p;
  p.intrinsic_cooperativity = c;
  p.kappa_ex_I = 0.5 * kappa_i * std::sqrt((4.0 + 8.0 * c + 3.0 * c * c) / (1.0 + c));
  p.kappa_ex_II = kappa_i * std::sqrt(1.0 + 2.0 * c);
  p.kappa_ex_III_defined = c > 1.0;
  p.kappa_ex_III = p.kappa_ex_III_defined ? kappa_i * (c - 1.0) : nan_v;
  p.delta_c_I = kappa_i * c / (2.0 * std::sqrt(1.0 + c));
  p.delta_a_I = system.gamma * std::sqrt(1.0 + c);
  const double q = 20.0 - 16.0 * c + 5.0 * c * c;
  p.fidelity_III = 4.0 * (c - 1.0) * (c - 1.0) / q;
  p.eta_II = eta_max(c);
  p.eta_III = c > 0.0 ? q / (9.0 * c * c) : nan_v;
  return p;
}

double fidelity_gain_estimate(double kappa_i, double kappa_ex, double c_t) {
  if (!(kappa_ex > 0.0) || !(c_t > 0.0))
    throw std::invalid_argument("fidelity gain estimate needs kappa_ex > 0 and C_t > 0");
  const double d = kappa_i / kappa_ex - 1.0 / (2.0 * c_t);
  const double a = d * d;
  return a / (1.0 + a);
}

double Interval::clamp(double v) const { return std::clamp(v, lo, hi); }

void OptimizationBounds::validate() const {
  for (const Interval* i : {&delta_c, &delta_a, &b_field}) {
    if (!std::isfinite(i->lo) || !std::isfinite(i->hi))
      throw std::invalid_argument("optimisation bounds must be finite");
    if (i->lo > i->hi) throw std::invalid_argument("optimisation bound has lo > hi");
  }
}

OptimizationBounds default_bounds(const LambdaSystem& system, const CavityParams& cavity,
                                  bool pin_field) {
  const double kt = cavity.kappa_t();
  OptimizationBounds b;
  b.delta_c = {-3.0 * kt, 3.0 * kt};
  b.delta_a = {-10.0 * system.gamma, 10.0 * system.gamma};
  b.b_field = pin_field ? Interval{0.0, 0.0} : Interval{-default_field_bound, default_field_bound};
  return b;
}

double mean_fidelity(const LambdaSystem& system, const CavityParams& cavity,
                     const DriveSettings& drive, std::span<const JointQubitState> states) {
  std::vector<double> f(states.size()), eta(states.size());
  try {
    kernels::evaluate_samples(states, system, cavity, effective_detunings(drive, system), f, eta);
  } catch (const NumericalError&) {
    return nan_v;
  }
  std::vector<double> valid;
  valid.reserve(f.size());
  for (double v : f)
    if (!std::isnan(v)) valid.push_back(v);
  if (valid.empty()) return nan_v;
  return pairwise_sum(valid) / static_cast<double>(valid.size());
}

OptimizationResult optimize_asymmetric(const LambdaSystem& system, const CavityParams& cavity,
                                       const OptimizationBounds& bounds,
                                       const QubitSamples& samples,
                                       const OptimizerOptions& options) {
  system.validate();
  cavity.validate();
  bounds.validate();
  if (samples.size() == 0) throw std::invalid_argument("sample set is empty");
  if (options.grid_points == 0) throw std::invalid_argument("grid needs at least one point");
  const auto states = samples.states();

  OptimizationBounds box = bounds;
  if (options.fold_mirror && mirror_symmetric(system, bounds)) box.delta_c.lo = 0.0;

  OptimizationResult res;
  DriveSettings base;
  base.delta_c = box.delta_c.clamp(0.0);
  base.delta_a = box.delta_a.clamp(0.0);
  base.b_field = box.b_field.clamp(0.0);
  res.baseline_drive = base;
  const double baseline_f = mean_fidelity(system, cavity, base, states);
  res.evaluations = 1;

  std::vector<Axis> free;
  if (box.delta_c.width() > 0.0) free.push_back({0, box.delta_c});
  if (box.delta_a.width() > 0.0) free.push_back({1, box.delta_a});
  if (box.b_field.width() > 0.0) free.push_back({2, box.b_field});
  const std::size_t dim = free.size();

  // Pre-scan on the full tensor grid of the free axes.
  const std::size_t m = dim == 0 ? 1 : options.grid_points;
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) cells *= m;
  auto cell_coords = [&](std::size_t idx) {
    std::vector<double> u(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t j = idx % m;
      idx /= m;
      u[k] = m == 1 ? 0.5 : static_cast<double>(j) / static_cast<double>(m - 1);
    }
    return u;
  };

  std::vector<double> grid_f(cells);
  const auto n_cells = static_cast<std::ptrdiff_t>(cells);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n_cells; ++i) {
    try {
      grid_f[i] = mean_fidelity_serial(system, cavity,
                                       drive_from(free, cell_coords(static_cast<std::size_t>(i)), base),
                                       states);
    } catch (...) {
#pragma omp critical(sprint_optimizer_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  res.evaluations += cells;

  std::vector<std::size_t> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return loss(grid_f[a]) < loss(grid_f[b]); });

  DriveSettings best_drive = base;
  double best_loss = loss(baseline_f);
  if (loss(grid_f[order.front()]) < best_loss) {
    best_loss = loss(grid_f[order.front()]);
    best_drive = drive_from(free, cell_coords(order.front()), base);
  }

  if (dim > 0) {
    const std::vector<double> lower(dim, 0.0), upper(dim, 1.0);
    const std::vector<double> step(dim, m > 1 ? 1.0 / static_cast<double>(m - 1) : 0.25);
    const std::size_t starts = std::min(options.starts, cells);
    for (std::size_t s = 0; s < starts; ++s) {
      if (std::isnan(grid_f[order[s]])) break;
      auto objective = [&](const std::vector<double>& u) {
        return loss(mean_fidelity(system, cavity, drive_from(free, u, base), states));
      };
      const SimplexResult r =
          nelder_mead(objective, cell_coords(order[s]), step, lower, upper, options.simplex);
      res.evaluations += r.evaluations;
      if (r.value < best_loss) {
        best_loss = r.value;
        best_drive = drive_from(free, r.x, base);
      }
    }
  }

  res.baseline = average_gate_outcome(system, cavity, base, samples);
  const bool improved = best_loss < loss(baseline_f);
  const DriveSettings chosen = improved ? best_drive : base;
  res.outcome = improved ? average_gate_outcome(system, cavity, chosen, samples) : res.baseline;
  res.converged = improved;
  res.delta_c_opt = chosen.delta_c;
  res.delta_a_opt = chosen.delta_a;
  res.b_opt = chosen.b_field;
  res.mean_fidelity = res.outcome.mean_fidelity;
  res.sigma_fidelity = res.outcome.sigma_fidelity;
  res.mean_efficiency = res.outcome.mean_efficiency;
  res.sigma_efficiency = res.outcome.sigma_efficiency;
  return res;
}

OptimizationResult optimize_asymmetric(const LambdaSystem& system, const CavityParams& cavity,
                                       const OptimizationBounds& bounds, const SamplerSpec& spec,
                                       const OptimizerOptions& options) {
  return optimize_asymmetric(system, cavity, bounds, QubitSamples::generate(spec), options);
}

std::string_view to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::analytic: return "analytic";
    case SweepMethod::numeric: return "numeric";
    default: return "none";
  }
}

bool is_symmetric(const LambdaSystem& system) {
  const double a = std::abs(system.g_down), b = std::abs(system.g_up);
  return std::abs(a - b) <= 1e-9 * std::max(a, b);
}

std::vector<double> coupling_grid(double lo, double hi, std::size_t points, bool log_spacing) {
  if (points == 0) throw std::invalid_argument("sweep range is empty");
  if (!(lo > 0.0) || hi < lo) throw std::invalid_argument("sweep needs 0 < lo <= hi");
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    v[i] = log_spacing ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }
  return v;
}

std::vector<SweepRow> sweep_coupling(const LambdaSystem& system, double kappa_i,
                                     std::span<const double> kappa_ex_values,
                                     const QubitSamples& samples, const SweepOptions& options) {
  if (kappa_ex_values.empty()) throw std::invalid_argument("sweep range is empty");
  const bool analytic_ok = is_symmetric(system) && conjugate_pair(system) && kappa_i > 0.0;
  const double kex_opt = analytic_ok ? optimal_coupling(kappa_i, system) : 0.0;

  std::vector<SweepRow> rows;
  rows.reserve(kappa_ex_values.size());
  for (double kex : kappa_ex_values) {
    const CavityParams cavity{kex, kappa_i};
    cavity.validate();
    SweepRow row;
    row.kappa_ex = kex;
    const AverageOutcome zero = average_gate_outcome(system, cavity, DriveSettings{}, samples);
    row.fidelity_0 = zero.mean_fidelity;
    row.sigma_fidelity_0 = zero.sigma_fidelity;
    row.efficiency_0 = zero.mean_efficiency;

    AverageOutcome best = zero;
    if (options.optimize && analytic_ok && kex >= kappa_i && kex <= kex_opt * (1.0 + 1e-12)) {
      const DetuningPair d = symmetric_optimal_detunings(cavity, system).branch(options.branch);
      DriveSettings drive;
      drive.delta_c = d.delta_c;
      drive.delta_a = d.delta_a;
      best = average_gate_outcome(system, cavity, drive, samples);
      row.method = SweepMethod::analytic;
      row.delta_c_opt = d.delta_c;
      row.delta_a_opt = d.delta_a;
    } else if (options.optimize) {
      const OptimizationResult r = optimize_asymmetric(
          system, cavity, default_bounds(system, cavity, options.pin_field), samples,
          options.optimizer);
      best = r.outcome;
      row.method = SweepMethod::numeric;
      row.delta_c_opt = r.delta_c_opt;
      row.delta_a_opt = r.delta_a_opt;
      row.b_opt = r.b_opt;
    }
    row.fidelity_opt = best.mean_fidelity;
    row.sigma_fidelity_opt = best.sigma_fidelity;
    row.efficiency_opt = best.mean_efficiency;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sprint
