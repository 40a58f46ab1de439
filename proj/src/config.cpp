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

#include "sprint/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace sprint {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"system",
       {"preset", "flavor", "phase", "g_down", "g_down_phase", "g_up", "g_up_phase", "gamma",
        "m_down", "m_up", "m_e", "lande_lower", "lande_upper"}},
      {"cavity", {"kappa_ex", "kappa_i", "length_mm", "length_um", "t1_ppm", "t2_loss_ppm"}},
      {"drive", {"delta_c", "delta_a", "b_field", "kappa_s", "detunings", "branch"}},
      {"state", {"theta", "phi", "theta_p", "phi_p"}},
      {"sampler", {"mode", "count", "seed"}},
      {"optimize",
       {"delta_c_min", "delta_c_max", "delta_a_min", "delta_a_max", "b_min", "b_max", "pin_field",
        "grid_points", "starts"}},
      {"sweep", {"kappa_ex_min", "kappa_ex_max", "points", "spacing", "optimize"}},
      {"oracle", {"cases", "seed", "seed_ratio", "extrapolate", "levels", "trajectory"}},
      {"output", {"path", "histogram"}},
  };
  return s;
}

class Section {
 public:
  Section(const pt::ptree* node, std::string name) : node_(node), name_(std::move(name)) {}

  bool present() const { return node_ != nullptr; }
  bool has(const std::string& key) const { return node_ && node_->find(key) != node_->not_found(); }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return node_->get<std::string>(key);
  }

  std::optional<double> number(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(*t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t->size() || !std::isfinite(v)) fail(key, "expected a finite number, got '" + *t + "'");
    return v;
  }

  std::optional<std::uint64_t> count(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    if (t->empty() || !std::all_of(t->begin(), t->end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(key, "expected a non-negative integer, got '" + *t + "'");
    try {
      return std::stoull(*t);
    } catch (const std::exception&) {
      fail(key, "integer out of range");
    }
  }

  std::optional<bool> flag(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    if (*t == "true" || *t == "yes" || *t == "1") return true;
    if (*t == "false" || *t == "no" || *t == "0") return false;
    fail(key, "expected true or false, got '" + *t + "'");
  }

  double mhz(const std::string& key, double fallback) const {
    const auto v = number(key);
    return v ? from_mhz(*v) : fallback;
  }

  template <class F>
  auto parse_with(const std::string& key, F&& f) const -> std::optional<decltype(f(std::string{}))> {
    const auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return f(*t);
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + what);
  }

 private:
  const pt::ptree* node_;
  std::string name_;
};

void check_schema(const pt::ptree& root) {
  for (const auto& [name, node] : root) {
    const auto it = schema().find(name);
    if (it == schema().end()) {
      if (node.empty()) throw ConfigError("top-level key '" + name + "' must be inside a section");
      throw ConfigError("unknown section [" + name + "]");
    }
    for (const auto& [key, value] : node) {
      if (!it->second.count(key)) throw ConfigError("[" + name + "] " + key + ": unknown key");
      if (!value.empty()) throw ConfigError("[" + name + "] " + key + ": nested keys not allowed");
    }
  }
}

template <class F>
void rethrow_as(const Section& s, const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    s.fail(key, e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

OptimizationBounds ScenarioConfig::effective_bounds() const {
  return bounds ? *bounds : default_bounds(system, cavity, pin_field);
}

DriveSettings ScenarioConfig::effective_drive() const {
  DriveSettings d = drive;
  if (optimal_detunings) {
    if (d.b_field != 0.0)
      throw ConfigError("[drive] detunings: optimal detunings require b_field = 0");
    const DetuningPair p = symmetric_optimal_detunings(cavity, system).branch(branch);
    d.delta_c = p.delta_c;
    d.delta_a = p.delta_a;
  }
  return d;
}

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_schema(root);
  auto section = [&](const std::string& name) {
    const auto it = root.find(name);
    return Section(it == root.not_found() ? nullptr : &it->second, name);
  };

  ScenarioConfig cfg;

  // [system]: exactly one of a preset id or inline fields.
  const Section sys = section("system");
  if (!sys.present()) throw ConfigError("missing [system] section");
  static const std::vector<std::string> inline_keys{"g_down", "g_down_phase", "g_up", "g_up_phase",
                                                    "gamma",  "m_down",       "m_up", "m_e",
                                                    "lande_lower", "lande_upper"};
  const bool any_inline =
      std::any_of(inline_keys.begin(), inline_keys.end(), [&](const auto& k) { return sys.has(k); });
  cfg.flavor = sys.parse_with("flavor", parse_flavor).value_or(CavityFlavor::conventional);
  cfg.phase = sys.parse_with("phase", parse_mode_phase).value_or(ModePhase::sign_absorbed);

  if (sys.has("preset")) {
    if (any_inline) sys.fail("preset", "give either a preset or inline system fields, not both");
    cfg.preset_id = *sys.text("preset");
    Preset p;
    rethrow_as(sys, "preset", [&] { p = preset(*cfg.preset_id, cfg.flavor, cfg.phase); });
    cfg.system = p.system;
    cfg.cavity = p.cavity;
    cfg.mirrors = p.mirrors;
    cfg.pin_field = cfg.flavor == CavityFlavor::fiber;
  } else {
    if (!any_inline) sys.fail("preset", "give a preset or inline system fields");
    if (sys.has("flavor") || sys.has("phase"))
      sys.fail(sys.has("flavor") ? "flavor" : "phase", "only meaningful with a preset");
    for (const char* k : {"g_down", "g_up", "gamma"})
      if (!sys.has(k)) sys.fail(k, "required for an inline system");
    LambdaSystem& s = cfg.system;
    s.g_down = std::polar(from_mhz(*sys.number("g_down")), sys.number("g_down_phase").value_or(0.0));
    s.g_up = std::polar(from_mhz(*sys.number("g_up")), sys.number("g_up_phase").value_or(0.0));
    s.gamma = from_mhz(*sys.number("gamma"));
    s.m_down = sys.number("m_down").value_or(s.m_down);
    s.m_up = sys.number("m_up").value_or(s.m_up);
    s.m_e = sys.number("m_e").value_or(s.m_e);
    s.lande_lower = sys.number("lande_lower").value_or(s.lande_lower);
    s.lande_upper = sys.number("lande_upper").value_or(s.lande_upper);
  }
  rethrow_as(sys, cfg.preset_id ? "preset" : "g_down", [&] { cfg.system.validate(); });

  // [cavity]: rates or mirrors; with a preset, individual rates override the quoted ones.
  const Section cav = section("cavity");
  const bool rates = cav.has("kappa_ex") || cav.has("kappa_i");
  const bool mirror_keys =
      cav.has("length_mm") || cav.has("length_um") || cav.has("t1_ppm") || cav.has("t2_loss_ppm");
  if (rates && mirror_keys) cav.fail("kappa_ex", "give either rates or a mirror spec, not both");
  if (mirror_keys) {
    if (cav.has("length_mm") == cav.has("length_um"))
      cav.fail("length_mm", "give exactly one of length_mm or length_um");
    for (const char* k : {"t1_ppm", "t2_loss_ppm"})
      if (!cav.has(k)) cav.fail(k, "required for a mirror spec");
    MirrorSpec m;
    m.length_m = cav.has("length_mm") ? *cav.number("length_mm") * 1e-3 : *cav.number("length_um") * 1e-6;
    m.t1_ppm = *cav.number("t1_ppm");
    m.t2_plus_loss_ppm = *cav.number("t2_loss_ppm");
    rethrow_as(cav, "t1_ppm", [&] { cfg.cavity = cavity_from_mirrors(m).cavity; });
    cfg.mirrors = m;
  } else if (rates) {
    if (!cfg.preset_id && !(cav.has("kappa_ex") && cav.has("kappa_i")))
      cav.fail(cav.has("kappa_ex") ? "kappa_i" : "kappa_ex", "required for an inline system");
    cfg.cavity.kappa_ex = cav.mhz("kappa_ex", cfg.cavity.kappa_ex);
    cfg.cavity.kappa_i = cav.mhz("kappa_i", cfg.cavity.kappa_i);
    cfg.mirrors.reset();
  } else if (!cfg.preset_id) {
    throw ConfigError("[cavity] required for an inline system (rates or mirror spec)");
  }
  rethrow_as(cav, "kappa_ex", [&] { cfg.cavity.validate(); });

  // [drive]
  const Section drv = section("drive");
  cfg.drive.delta_c = drv.mhz("delta_c", 0.0);
  cfg.drive.delta_a = drv.mhz("delta_a", 0.0);
  cfg.drive.b_field = drv.number("b_field").value_or(0.0);
  cfg.drive.kappa_s = drv.mhz("kappa_s", 0.0);
  if (cfg.drive.kappa_s < 0.0) drv.fail("kappa_s", "must be positive");
  if (const auto d = drv.text("detunings")) {
    if (*d == "optimal") {
      cfg.optimal_detunings = true;
      if (drv.has("delta_c") || drv.has("delta_a"))
        drv.fail("detunings", "optimal detunings replace delta_c and delta_a; remove them");
      if (cfg.drive.b_field != 0.0) drv.fail("detunings", "optimal detunings require b_field = 0");
    } else if (*d != "manual") {
      drv.fail("detunings", "expected manual or optimal");
    }
  }
  cfg.branch = drv.parse_with("branch", parse_branch).value_or(Branch::plus);

  // [state]
  const Section st = section("state");
  if (st.present()) {
    cfg.state = JointQubitState::from_bloch(st.number("theta").value_or(0.0), st.number("phi").value_or(0.0),
                                            st.number("theta_p").value_or(0.0),
                                            st.number("phi_p").value_or(0.0));
  }

  // [sampler]
  const Section smp = section("sampler");
  if (smp.present()) {
    cfg.sampler_requested = true;
    cfg.sampler.mode = smp.parse_with("mode", parse_sampler_mode).value_or(SamplerMode::haar);
    cfg.sampler.count = smp.count("count").value_or(default_sample_count);
    cfg.sampler.seed = smp.count("seed").value_or(default_sample_seed);
    if (cfg.sampler.count == 0) smp.fail("count", "must be positive");
  }

  // [optimize]
  const Section opt = section("optimize");
  cfg.pin_field = opt.flag("pin_field").value_or(cfg.pin_field);
  const bool any_bound = opt.has("delta_c_min") || opt.has("delta_c_max") || opt.has("delta_a_min") ||
                         opt.has("delta_a_max") || opt.has("b_min") || opt.has("b_max");
  if (any_bound) {
    OptimizationBounds b = default_bounds(cfg.system, cfg.cavity, cfg.pin_field);
    b.delta_c = {opt.mhz("delta_c_min", b.delta_c.lo), opt.mhz("delta_c_max", b.delta_c.hi)};
    b.delta_a = {opt.mhz("delta_a_min", b.delta_a.lo), opt.mhz("delta_a_max", b.delta_a.hi)};
    b.b_field = {opt.number("b_min").value_or(b.b_field.lo), opt.number("b_max").value_or(b.b_field.hi)};
    rethrow_as(opt, "delta_c_min", [&] { b.validate(); });
    cfg.bounds = b;
  }
  cfg.optimizer.grid_points = opt.count("grid_points").value_or(cfg.optimizer.grid_points);
  cfg.optimizer.starts = opt.count("starts").value_or(cfg.optimizer.starts);
  if (cfg.optimizer.grid_points == 0) opt.fail("grid_points", "must be positive");

  // [sweep]
  const Section swp = section("sweep");
  if (swp.present()) {
    SweepSpec s;
    for (const char* k : {"kappa_ex_min", "kappa_ex_max", "points"})
      if (!swp.has(k)) swp.fail(k, "required");
    s.kappa_ex_min = from_mhz(*swp.number("kappa_ex_min"));
    s.kappa_ex_max = from_mhz(*swp.number("kappa_ex_max"));
    s.points = *swp.count("points");
    if (s.points == 0) swp.fail("points", "sweep range is empty");
    if (!(s.kappa_ex_min > 0.0) || s.kappa_ex_max < s.kappa_ex_min)
      swp.fail("kappa_ex_min", "need 0 < kappa_ex_min <= kappa_ex_max");
    if (const auto sp = swp.text("spacing")) {
      if (*sp != "linear" && *sp != "log") swp.fail("spacing", "expected linear or log");
      s.log_spacing = *sp == "log";
    }
    s.optimize = swp.flag("optimize").value_or(true);
    cfg.sweep = s;
  }

  // [oracle]
  const Section orc = section("oracle");
  cfg.oracle.cases = orc.count("cases").value_or(cfg.oracle.cases);
  cfg.oracle.seed = orc.count("seed").value_or(cfg.oracle.seed);
  cfg.oracle.seed_ratio = orc.number("seed_ratio").value_or(cfg.oracle.seed_ratio);
  cfg.oracle.extrapolate = orc.flag("extrapolate").value_or(cfg.oracle.extrapolate);
  cfg.oracle.levels = static_cast<int>(orc.count("levels").value_or(3));
  cfg.oracle.trajectory_path = orc.text("trajectory");
  if (!(cfg.oracle.seed_ratio > 0.0)) orc.fail("seed_ratio", "must be positive");
  if (cfg.oracle.levels < 1 || cfg.oracle.levels > 6) orc.fail("levels", "expected 1 to 6");

  // [output]
  const Section out = section("output");
  cfg.output_path = out.text("path");
  cfg.histogram_path = out.text("histogram");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(f);
}

std::string export_preset(const Preset& p) {
  std::ostringstream o;
  const LambdaSystem& s = p.system;
  o << "# " << p.ion.id << " " << p.ion.transition << ", " << fmt(p.ion.wavelength_nm) << " nm, "
    << to_string(p.flavor) << " cavity, " << to_string(p.phase) << " mode phase\n";
  o << "# rates in MHz (ordinary frequency), field in gauss\n";
  o << "[system]\n";
  o << "g_down = " << fmt(to_mhz(std::abs(s.g_down))) << "\n";
  o << "g_down_phase = " << fmt(std::arg(s.g_down)) << "\n";
  o << "g_up = " << fmt(to_mhz(std::abs(s.g_up))) << "\n";
  o << "g_up_phase = " << fmt(std::arg(s.g_up)) << "\n";
  o << "gamma = " << fmt(to_mhz(s.gamma)) << "\n";
  o << "m_down = " << fmt(s.m_down) << "\nm_up = " << fmt(s.m_up) << "\nm_e = " << fmt(s.m_e) << "\n";
  o << "lande_lower = " << fmt(s.lande_lower) << "\nlande_upper = " << fmt(s.lande_upper) << "\n\n";
  o << "[cavity]\n";
  o << "kappa_ex = " << fmt(to_mhz(p.cavity.kappa_ex)) << "\n";
  o << "kappa_i = " << fmt(to_mhz(p.cavity.kappa_i)) << "\n";
  o << "# mirrors: length " << fmt(p.mirrors.length_m * 1e3) << " mm, T1 " << fmt(p.mirrors.t1_ppm)
    << " ppm, T2+L " << fmt(p.mirrors.t2_plus_loss_ppm) << " ppm\n\n";
  o << "[drive]\ndelta_c = 0\ndelta_a = 0\nb_field = 0\n";
  if (p.flavor == CavityFlavor::fiber) o << "\n[optimize]\npin_field = true\n";
  return o.str();
}

}  // namespace sprint
