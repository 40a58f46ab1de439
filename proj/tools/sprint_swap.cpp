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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "sprint/commands.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string mode;
  std::string branch;
};

sprint::ScenarioConfig resolve(const Overrides& o, bool config_required) {
  if (o.config.empty()) {
    if (config_required) throw sprint::ConfigError("--config is required for this command");
    return {};
  }
  sprint::ScenarioConfig cfg = sprint::load_config(o.config);
  if (!o.out.empty()) cfg.output_path = o.out;
  if (o.seed) cfg.sampler.seed = *o.seed, cfg.sampler_requested = true;
  if (o.samples) {
    if (*o.samples == 0) throw sprint::ConfigError("--samples must be positive");
    cfg.sampler.count = *o.samples, cfg.sampler_requested = true;
  }
  if (!o.mode.empty()) cfg.sampler.mode = sprint::parse_sampler_mode(o.mode), cfg.sampler_requested = true;
  if (!o.branch.empty()) cfg.branch = sprint::parse_branch(o.branch);
  return cfg;
}

void add_common(CLI::App* cmd, Overrides& o, bool sampler) {
  cmd->add_option("--config", o.config, "scenario file (INI)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "CSV output path");
  if (sampler) {
    cmd->add_option("--seed", o.seed, "sampler seed");
    cmd->add_option("--samples", o.samples, "number of sampled input states");
    cmd->add_option("--mode", o.mode, "sampler mode")->check(CLI::IsMember({"haar", "grid"}));
  }
  cmd->add_option("--branch", o.branch, "analytic detuning branch")->check(CLI::IsMember({"plus", "minus"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ion-photon SWAP gate design and verification"};
  app.require_subcommand(1);
  Overrides o;

  auto* outcome = app.add_subcommand("outcome", "gate outcome for one input and optional sample average");
  add_common(outcome, o, true);
  auto* sweep = app.add_subcommand("sweep", "sweep the extrinsic coupling, CSV per kappa_ex");
  add_common(sweep, o, true);
  auto* optimize = app.add_subcommand("optimize", "optimise detunings and field for the mean fidelity");
  add_common(optimize, o, true);
  app.add_subcommand("tables", "landmark, cavity and post-selection tables");
  auto* oracle = app.add_subcommand("oracle-check", "closed form versus time-domain integration");
  add_common(oracle, o, false);
  std::optional<std::size_t> cases;
  oracle->add_option("--cases", cases, "number of randomised cases");

  auto* preset_cmd = app.add_subcommand("preset", "print a preset as a scenario file");
  std::string ion = "Yb171", flavor = "conventional", phase = "sign-absorbed";
  preset_cmd->add_option("ion", ion, "Yb171 | Ca40 | Ba138");
  preset_cmd->add_option("--flavor", flavor)->check(CLI::IsMember({"conventional", "fiber"}));
  preset_cmd->add_option("--phase", phase)->check(CLI::IsMember({"sign-absorbed", "signed-physical"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sprint::exit_ok : sprint::exit_validation;
  }

  return sprint::run_guarded(
      [&]() -> int {
        if (*outcome) return sprint::cmd_outcome(resolve(o, true), std::cout);
        if (*sweep) return sprint::cmd_sweep(resolve(o, true), std::cout);
        if (*optimize) return sprint::cmd_optimize(resolve(o, true), std::cout);
        if (app.got_subcommand("tables")) return sprint::cmd_tables(std::cout);
        if (*preset_cmd) {
          std::cout << sprint::export_preset(
              sprint::preset(ion, sprint::parse_flavor(flavor), sprint::parse_mode_phase(phase)));
          return sprint::exit_ok;
        }
        sprint::ScenarioConfig cfg = resolve(o, false);
        sprint::OracleCheckSpec spec = cfg.oracle;
        if (cases) spec.cases = *cases;
        if (o.config.empty()) return sprint::cmd_oracle_check(spec, nullptr, std::cout);
        const sprint::OracleCase sc = sprint::scenario_case(cfg);
        return sprint::cmd_oracle_check(spec, &sc, std::cout);
      },
      std::cerr);
}
