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

#include "sprint/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "sprint/zeeman.hpp"

namespace sprint {

namespace {

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write output file '" + path + "'");
  return f;
}

void describe(const ScenarioConfig& cfg, std::ostream& r) {
  if (cfg.preset_id)
    r << "system: " << *cfg.preset_id << " (" << to_string(cfg.flavor) << ", " << to_string(cfg.phase)
      << ")\n";
  else
    r << "system: inline\n";
  const LambdaSystem& s = cfg.system;
  r << "  g_down = " << sci(to_mhz(std::abs(s.g_down))) << " MHz, g_up = " << sci(to_mhz(std::abs(s.g_up)))
    << " MHz, gamma = " << sci(to_mhz(s.gamma)) << " MHz\n";
  r << "  kappa_ex = " << sci(to_mhz(cfg.cavity.kappa_ex)) << " MHz, kappa_i = "
    << sci(to_mhz(cfg.cavity.kappa_i)) << " MHz\n";
}

void describe_drive(const DriveSettings& d, std::ostream& r) {
  r << "drive: delta_c = " << sci(to_mhz(d.delta_c)) << " MHz, delta_a = " << sci(to_mhz(d.delta_a))
    << " MHz, B = " << sci(d.b_field) << " G\n";
}

void report_average(const AverageOutcome& a, std::ostream& r, const char* label) {
  r << label << ": mean F = " << sci(a.mean_fidelity) << " +- " << sci(a.sigma_fidelity)
    << ", mean eta = " << sci(a.mean_efficiency) << " +- " << sci(a.sigma_efficiency) << " ("
    << a.samples << " samples";
  if (a.undefined_fidelity) r << ", " << a.undefined_fidelity << " without emitted photon";
  r << ")\n";
}

std::string fidelity_cell(const std::optional<double>& f) {
  return f ? csv_number(*f) : std::string("undefined");
}

QubitSamples samples_for(const ScenarioConfig& cfg) { return QubitSamples::generate(cfg.sampler); }

}  // namespace

std::string csv_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "kappa_ex_MHz,method,delta_c_opt_MHz,delta_a_opt_MHz,b_opt_G,F_opt,sigma_F_opt,eta_opt,"
         "F_0,sigma_F_0,eta_0\n";
  for (const auto& r : rows) {
    out << csv_number(to_mhz(r.kappa_ex)) << ',' << to_string(r.method) << ','
        << csv_number(to_mhz(r.delta_c_opt)) << ',' << csv_number(to_mhz(r.delta_a_opt)) << ','
        << csv_number(r.b_opt) << ',' << csv_number(r.fidelity_opt) << ','
        << csv_number(r.sigma_fidelity_opt) << ',' << csv_number(r.efficiency_opt) << ','
        << csv_number(r.fidelity_0) << ',' << csv_number(r.sigma_fidelity_0) << ','
        << csv_number(r.efficiency_0) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const FidelityHistogram& h) {
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < histogram_bins; ++i)
    out << csv_number(FidelityHistogram::bin_left(i)) << ',' << csv_number(FidelityHistogram::bin_right(i))
        << ',' << h.counts[i] << '\n';
}

void write_optimization_csv(std::ostream& out, const OptimizationResult& r) {
  out << "delta_c_opt_MHz,delta_a_opt_MHz,b_opt_G,F_opt,sigma_F_opt,eta_opt,sigma_eta_opt,F_0,"
         "sigma_F_0,eta_0,sigma_eta_0,evaluations,converged\n";
  out << csv_number(to_mhz(r.delta_c_opt)) << ',' << csv_number(to_mhz(r.delta_a_opt)) << ','
      << csv_number(r.b_opt) << ',' << csv_number(r.mean_fidelity) << ','
      << csv_number(r.sigma_fidelity) << ',' << csv_number(r.mean_efficiency) << ','
      << csv_number(r.sigma_efficiency) << ',' << csv_number(r.baseline.mean_fidelity) << ','
      << csv_number(r.baseline.sigma_fidelity) << ',' << csv_number(r.baseline.mean_efficiency) << ','
      << csv_number(r.baseline.sigma_efficiency) << ',' << r.evaluations << ','
      << (r.converged ? "true" : "false") << '\n';
}

int cmd_outcome(const ScenarioConfig& cfg, std::ostream& r) {
  const DriveSettings drive = cfg.effective_drive();
  const EffectiveDetunings dets = effective_detunings(drive, cfg.system);
  const JointQubitState state = cfg.state.value_or(JointQubitState{});
  state.validate();
  const GateOutcome o = gate_outcome(state, cfg.system, cfg.cavity, dets);

  describe(cfg, r);
  describe_drive(drive, r);
  r << "single input: P_D = " << sci(o.p_dark) << ", P_B = " << sci(o.p_bright) << ", F = "
    << (o.fidelity ? sci(*o.fidelity) : std::string("undefined (no photon emitted)"))
    << ", eta = " << sci(o.efficiency) << '\n';

  std::optional<AverageOutcome> avg;
  if (cfg.sampler_requested) {
    avg = average_gate_outcome(cfg.system, cfg.cavity, drive, cfg.sampler);
    r << "sampler: " << to_string(cfg.sampler.mode) << ", seed " << cfg.sampler.seed << '\n';
    report_average(*avg, r, "average");
  }

  if (cfg.output_path) {
    auto f = open_output(*cfg.output_path);
    f << "delta_c_MHz,delta_a_MHz,b_G,p_dark,p_bright,fidelity,efficiency";
    if (avg) f << ",mean_F,sigma_F,mean_eta,sigma_eta,samples";
    f << '\n';
    f << csv_number(to_mhz(drive.delta_c)) << ',' << csv_number(to_mhz(drive.delta_a)) << ','
      << csv_number(drive.b_field) << ',' << csv_number(o.p_dark) << ',' << csv_number(o.p_bright)
      << ',' << fidelity_cell(o.fidelity) << ',' << csv_number(o.efficiency);
    if (avg)
      f << ',' << csv_number(avg->mean_fidelity) << ',' << csv_number(avg->sigma_fidelity) << ','
        << csv_number(avg->mean_efficiency) << ',' << csv_number(avg->sigma_efficiency) << ','
        << avg->samples;
    f << '\n';
  }
  return exit_ok;
}

int cmd_sweep(const ScenarioConfig& cfg, std::ostream& r) {
  if (!cfg.sweep) throw ConfigError("[sweep] section required for the sweep command");
  const SweepSpec& s = *cfg.sweep;
  const auto grid = coupling_grid(s.kappa_ex_min, s.kappa_ex_max, s.points, s.log_spacing);
  SweepOptions opt;
  opt.optimize = s.optimize;
  opt.branch = cfg.branch;
  opt.pin_field = cfg.pin_field;
  opt.optimizer = cfg.optimizer;
  const auto rows = sweep_coupling(cfg.system, cfg.cavity.kappa_i, grid, samples_for(cfg), opt);
  if (cfg.output_path) {
    auto f = open_output(*cfg.output_path);
    write_sweep_csv(f, rows);
    r << "wrote " << rows.size() << " rows to " << *cfg.output_path << '\n';
  } else {
    write_sweep_csv(r, rows);
  }
  return exit_ok;
}

int cmd_optimize(const ScenarioConfig& cfg, std::ostream& r) {
  const OptimizationBounds bounds = cfg.effective_bounds();
  const OptimizationResult res =
      optimize_asymmetric(cfg.system, cfg.cavity, bounds, samples_for(cfg), cfg.optimizer);

  describe(cfg, r);
  r << "bounds: delta_c [" << sci(to_mhz(bounds.delta_c.lo)) << ", " << sci(to_mhz(bounds.delta_c.hi))
    << "] MHz, delta_a [" << sci(to_mhz(bounds.delta_a.lo)) << ", " << sci(to_mhz(bounds.delta_a.hi))
    << "] MHz, B [" << sci(bounds.b_field.lo) << ", " << sci(bounds.b_field.hi) << "] G\n";
  r << "sampler: " << to_string(cfg.sampler.mode) << ", " << cfg.sampler.count << " requested, seed "
    << cfg.sampler.seed << '\n';
  report_average(res.baseline, r, "baseline");
  r << "optimum: delta_c = " << sci(to_mhz(res.delta_c_opt)) << " MHz (" << sci(to_khz(res.delta_c_opt))
    << " kHz), delta_a = " << sci(to_mhz(res.delta_a_opt)) << " MHz, B = " << sci(res.b_opt) << " G\n";
  report_average(res.outcome, r, "optimized");
  r << "evaluations: " << res.evaluations << ", improved over baseline: " << (res.converged ? "yes" : "no")
    << '\n';

  if (is_symmetric(cfg.system) && cfg.cavity.kappa_i > 0.0) {
    try {
      const SymmetricOptimum a = symmetric_optimal_detunings(cfg.cavity, cfg.system);
      r << "analytic (symmetric) optimum: delta_c = +-" << sci(to_mhz(a.plus.delta_c))
        << " MHz, delta_a = +-" << sci(to_mhz(a.plus.delta_a)) << " MHz\n";
    } catch (const std::out_of_range& e) {
      r << "analytic (symmetric) optimum: none (" << e.what() << ")\n";
    }
  }

  if (cfg.output_path) {
    auto f = open_output(*cfg.output_path);
    write_optimization_csv(f, res);
  }
  std::optional<std::string> hist = cfg.histogram_path;
  if (!hist && cfg.output_path) hist = *cfg.output_path + ".hist.csv";
  if (hist) {
    auto f = open_output(*hist);
    write_histogram_csv(f, res.outcome.histogram);
    std::string base = *hist;
    if (base.size() > 4 && base.ends_with(".csv")) base.resize(base.size() - 4);
    auto g = open_output(base + ".baseline.csv");
    write_histogram_csv(g, res.baseline.histogram);
  }
  return exit_ok;
}

int cmd_tables(std::ostream& r) {
  auto row = [&](const std::string& name, const std::string& a, const std::string& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-26s %18s %18s\n", name.c_str(), a.c_str(), b.c_str());
    r << buf;
  };
  auto khz = [](double v) { return sci(to_khz(v)) + " kHz"; };
  auto mhz = [](double v) { return sci(to_mhz(v)) + " MHz"; };

  // Design tables use the rounded free-space rate.
  auto nominal = [](Preset p) {
    p.system.gamma = p.ion.gamma_nominal;
    return p;
  };
  const Preset yc = nominal(preset("Yb171", CavityFlavor::conventional));
  const Preset yf = nominal(preset("Yb171", CavityFlavor::fiber));
  const LandmarkParameters lc = landmark_parameters(yc.cavity.kappa_i, yc.system);
  const LandmarkParameters lf = landmark_parameters(yf.cavity.kappa_i, yf.system);

  r << "Yb171 symmetric landmarks (conventional | fiber)\n";
  row("kappa_i", khz(yc.cavity.kappa_i), mhz(yf.cavity.kappa_i));
  row("g = chi g", mhz(std::abs(yc.system.g_down)), mhz(std::abs(yf.system.g_down)));
  row("gamma", mhz(yc.system.gamma), mhz(yf.system.gamma));
  row("C_i", sci(lc.intrinsic_cooperativity), sci(lf.intrinsic_cooperativity));
  row("kappa_ex(I)", khz(lc.kappa_ex_I), mhz(lf.kappa_ex_I));
  row("kappa_ex(II) = opt", khz(lc.kappa_ex_II), mhz(lf.kappa_ex_II));
  row("kappa_ex(III)", khz(lc.kappa_ex_III), mhz(lf.kappa_ex_III));
  row("delta_c(I)", khz(lc.delta_c_I), mhz(lf.delta_c_I));
  row("delta_a(I)", mhz(lc.delta_a_I), mhz(lf.delta_a_I));
  row("F(III)", sci(lc.fidelity_III), sci(lf.fidelity_III));
  row("eta(II) = eta_max", sci(lc.eta_II), sci(lf.eta_II));
  row("eta(III)", sci(lc.eta_III), sci(lf.eta_III));

  auto cavity_block = [&](const Preset& c, const Preset& f, bool per_transition) {
    const MirrorCavity mc = cavity_from_mirrors(c.mirrors);
    const MirrorCavity mf = cavity_from_mirrors(f.mirrors);
    row("length", sci(c.mirrors.length_m * 1e3) + " mm", sci(f.mirrors.length_m * 1e6) + " um");
    row("T1", sci(c.mirrors.t1_ppm) + " ppm", sci(f.mirrors.t1_ppm) + " ppm");
    row("T2 + L", sci(c.mirrors.t2_plus_loss_ppm) + " ppm", sci(f.mirrors.t2_plus_loss_ppm) + " ppm");
    row("finesse", sci(mc.finesse), sci(mf.finesse));
    row("kappa_ex (mirrors)", khz(mc.cavity.kappa_ex), mhz(mf.cavity.kappa_ex));
    row("kappa_i (mirrors)", khz(mc.cavity.kappa_i), mhz(mf.cavity.kappa_i));
    if (per_transition)
      row("(g_down, g_up)",
          "(" + sci(to_mhz(std::abs(c.system.g_down))) + ", " + sci(to_mhz(std::abs(c.system.g_up))) + ") MHz",
          "(" + sci(to_mhz(std::abs(f.system.g_down))) + ", " + sci(to_mhz(std::abs(f.system.g_up))) + ") MHz");
    const double cc = complex_cooperativity(c.system, c.cavity, {}).real();
    const double cf = complex_cooperativity(f.system, f.cavity, {}).real();
    row("cooperativity C_t", sci(cc), sci(cf));
    row("gate time", sci(gate_time_estimate(c.cavity.kappa_t(), cc, c.system.gamma) * 1e6) + " us",
        sci(gate_time_estimate(f.cavity.kappa_t(), cf, f.system.gamma) * 1e9) + " ns");
  };

  r << "\nYb171 cavities at 370 nm (conventional | fiber)\n";
  cavity_block(yc, yf, false);

  const Preset cc = nominal(preset("Ca40", CavityFlavor::conventional));
  const Preset cf = nominal(preset("Ca40", CavityFlavor::fiber));
  r << "\nCa40 / Ba138 cavities, 2D3/2 - 2P1/2 (conventional | fiber)\n";
  cavity_block(cc, cf, true);

  r << "\npost-selected efficiency factor Gamma / (Gamma + gamma_other)\n";
  for (const char* id : {"Ba138", "Ca40"}) {
    const IonPreset ion = preset(id, CavityFlavor::conventional).ion;
    row(id, sci(postselected_efficiency(1.0, *ion.gamma_transition, *ion.gamma_other)), "");
  }
  return exit_ok;
}

OracleCase scenario_case(const ScenarioConfig& cfg) {
  OracleCase c;
  c.state = cfg.state.value_or(JointQubitState{});
  c.system = cfg.system;
  c.cavity = cfg.cavity;
  c.drive = cfg.effective_drive();
  return c;
}

int cmd_oracle_check(const OracleCheckSpec& spec, const OracleCase* scenario, std::ostream& r) {
  std::vector<OracleCase> cases;
  if (scenario) cases.push_back(*scenario);
  const auto random = random_oracle_cases(spec.cases, spec.seed);
  cases.insert(cases.end(), random.begin(), random.end());
  if (cases.empty()) throw std::invalid_argument("[oracle] cases: nothing to check");

  OracleSuiteOptions opt;
  opt.seed_ratio = spec.seed_ratio;
  opt.extrapolate = spec.extrapolate;
  opt.extrapolation_levels = spec.levels;

  if (spec.seed_ratio < 100.0)
    r << "warning: kappa_s = kappa_t/" << sci(spec.seed_ratio)
      << " is above kappa_t/100; the adiabatic closed form is outside its validity range\n";

  const auto results = run_oracle_suite(cases, opt);
  double dev = 0.0, dev_x = 0.0, cons = 0.0;
  bool horizon = true;
  for (const auto& c : results) {
    dev = std::max({dev, c.dev_dark, c.dev_bright});
    if (c.extrapolated) dev_x = std::max({dev_x, c.extrap_dev_dark, c.extrap_dev_bright});
    cons = std::max(cons, c.oracle.conservation_residual);
    horizon = horizon && c.oracle.horizon_ok;
  }
  const double judged = spec.extrapolate ? dev_x : dev;

  r << "oracle check: " << cases.size() << " cases, kappa_s = kappa_t/" << sci(spec.seed_ratio) << '\n';
  r << "  max |dP| at kappa_s:          " << sci(dev) << '\n';
  if (spec.extrapolate)
    r << "  max |dP| kappa_s -> 0 (" << spec.levels << " levels): " << sci(dev_x) << '\n';
  r << "  max conservation residual:    " << sci(cons) << '\n';
  r << "  horizon: " << (horizon ? "ok" : "insufficient (norm left at t_max)") << '\n';

  if (spec.trajectory_path) {
    const OracleCase& c = cases.front();
    const EffectiveDetunings dets = effective_detunings(c.drive, c.system);
    const OracleSettings s = default_oracle_settings(c.system, c.cavity, dets, spec.seed_ratio);
    auto f = std::ofstream(*spec.trajectory_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write trajectory file '" + *spec.trajectory_path + "'");
    write_trajectory(f, integrate_amplitudes(c.state, c.system, c.cavity, dets, s));
  }

  const bool pass =
      judged < oracle_probability_tolerance && cons < oracle_conservation_tolerance && horizon;
  r << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? exit_ok : exit_numerical;
}

}  // namespace sprint
