// Copyright 2026 The lts authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: every subcommand assembles a task record and
// hands it to the same runner the scenario files use, so `lts run` and the
// individual subcommands cannot drift apart.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lts/scenario.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int threads = 0;
};

struct ModelFlags {
  std::string kind = "spin";
  int n = 4;
  int modes = 2;
  int nu_max = 4;
  double omega0 = 1.0;
  std::vector<double> energies;
  std::string model_json;

  json to_json() const {
    if (!model_json.empty()) {
      if (model_json.front() == '@') {
        std::ifstream in(model_json.substr(1));
        if (!in)
          throw CLI::ValidationError("--model-json",
                                     "cannot read " + model_json.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        return json::parse(buf.str());
      }
      return json::parse(model_json);
    }
    if (kind == "spin")
      return {{"kind", "spin"}, {"n", n}, {"omega0", omega0}};
    if (kind == "oscillator")
      return {{"kind", "oscillator"},
              {"modes", modes},
              {"omega0", omega0},
              {"nu_max", nu_max}};
    if (kind == "diagonal") {
      if (energies.empty())
        throw CLI::ValidationError("--energies",
                                   "diagonal model needs energies");
      return {{"kind", "diagonal"}, {"energies", energies}};
    }
    throw CLI::ValidationError("--model", "unknown model kind " + kind);
  }
};

struct TimeFlags {
  double start = 0.0;
  double stop = 10.0;
  int count = 101;

  json to_json() const {
    return {{"start", start}, {"stop", stop}, {"count", count}};
  }
};

void add_model_flags(CLI::App *cmd, ModelFlags &model) {
  cmd->add_option("--model", model.kind,
                  "Model kind: spin, oscillator, diagonal")
      ->default_val("spin");
  cmd->add_option("--n", model.n, "Spin count (spin model)");
  cmd->add_option("--modes", model.modes, "Mode count (oscillator model)");
  cmd->add_option("--nu-max", model.nu_max,
                  "Excitation cutoff (oscillator model)");
  cmd->add_option("--omega0", model.omega0, "Level spacing");
  cmd->add_option("--energies", model.energies,
                  "Energy list (diagonal model)")
      ->delimiter(',');
  cmd->add_option("--model-json", model.model_json,
                  "Full model record as JSON (or @file)");
}

void add_time_flags(CLI::App *cmd, TimeFlags &times) {
  cmd->add_option("--t-start", times.start, "Grid start");
  cmd->add_option("--t-stop", times.stop, "Grid stop");
  cmd->add_option("--t-count", times.count, "Grid point count");
}

json state_from_flags(const std::string &state, std::uint64_t seed) {
  if (state == "extreme+" || state == "extreme")
    return {{"kind", "extreme"}, {"sign", 1}};
  if (state == "extreme-")
    return {{"kind", "extreme"}, {"sign", -1}};
  if (state == "maximally_mixed")
    return {{"kind", "maximally_mixed"}};
  if (state == "random")
    return {{"kind", "random"}, {"seed", seed}};
  if (state == "random_pure")
    return {{"kind", "random"}, {"seed", seed}, {"pure", true}};
  if (!state.empty() && state.front() == '@') {
    std::ifstream in(state.substr(1));
    if (!in)
      throw CLI::ValidationError("--state",
                                 "cannot read " + state.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    return json::parse(buf.str());
  }
  return json::parse(state);
}

int execute(const json &task, const GlobalOptions &global) {
  try {
    const json summary = lts::run_task(task, global.out_dir, global.seed);
    std::printf("%s\n", summary.dump(2).c_str());
    return 0;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Local-time dynamical maps: spectra, evolution, Markovianity"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Base RNG seed")
      ->envname("LTS_SEED");
  app.add_option("--out-dir", global.out_dir, "Output directory")
      ->envname("LTS_OUT_DIR");
  app.add_option("--threads", global.threads,
                 "Worker thread cap (0 = library default)")
      ->envname("LTS_THREADS");

  ModelFlags model;
  TimeFlags times;
  std::string name = "task";
  std::string state = "extreme+";
  double lambda = 1.0;
  double far = lts::kDefaultFarThreshold;
  double near = lts::kDefaultNearThreshold;
  int k_fold = 1;

  auto *spectrum = app.add_subcommand("spectrum", "Tabulate energy levels");
  add_model_flags(spectrum, model);
  spectrum->add_option("--name", name, "Output file stem");

  auto *evolve = app.add_subcommand("evolve", "Evolve a state on a time grid");
  add_model_flags(evolve, model);
  add_time_flags(evolve, times);
  evolve->add_option("--name", name, "Output file stem");
  evolve->add_option("--state", state,
                     "extreme+/extreme-/maximally_mixed/random/random_pure "
                     "or JSON (or @file)");
  evolve->add_option("--lambda", lambda, "Gaussian width parameter")
      ->required();
  evolve->add_option("--k-fold", k_fold, "Composition depth (1 = exact map)");

  auto *markov = app.add_subcommand(
      "markov-scan", "Divisibility / CP scan of the exact family");
  add_model_flags(markov, model);
  add_time_flags(markov, times);
  markov->add_option("--name", name, "Output file stem");
  markov->add_option("--lambda", lambda, "Gaussian width parameter")
      ->required();

  std::string probe = "uniform";
  auto *coarse = app.add_subcommand(
      "coarse", "Coarse-grain the spectrum and scan the approximate map");
  add_model_flags(coarse, model);
  add_time_flags(coarse, times);
  coarse->add_option("--name", name, "Output file stem");
  coarse->add_option("--lambda", lambda, "Gaussian width parameter")
      ->required();
  coarse->add_option("--far-threshold", far, "Cross-group Gaussian bound");
  coarse->add_option("--near-threshold", near, "In-group Gaussian bound");
  coarse->add_option("--probe", probe, "Probe kind: uniform or none");

  std::string interaction_json;
  std::string env_state = "maximally_mixed";
  double t0 = 0.0;
  auto *opensys = app.add_subcommand(
      "opensys", "Reduced dynamics under a pure-decoherence interaction");
  add_time_flags(opensys, times);
  opensys->add_option("--name", name, "Output file stem");
  opensys
      ->add_option("--interaction", interaction_json,
                   "Interaction record as JSON (or @file): e_grid, "
                   "sys_dims, env_dims")
      ->required();
  opensys->add_option("--env-state", env_state,
                      "Environment state (same forms as --state)");
  opensys->add_option("--lambda", lambda, "Gaussian width parameter")
      ->required();
  opensys->add_option("--t0", t0, "Instant for the coefficient-matrix dump");

  std::vector<std::string> cl_states;
  double lambda_cl = 0.0;
  auto *classify =
      app.add_subcommand("classify", "Markovianity state-domain reports");
  add_model_flags(classify, model);
  classify->add_option("--name", name, "Output file stem");
  classify
      ->add_option("--state", cl_states,
                   "State (repeatable; same forms as evolve --state)")
      ->required();
  classify->add_option("--lambda", lambda_cl,
                       "Explicit width parameter (default: minimal policy)");

  std::string scenario_path;
  auto *run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", scenario_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (global.threads > 0)
    Eigen::setNbThreads(global.threads);

  try {
    if (spectrum->parsed())
      return execute({{"type", "spectrum"},
                      {"name", name},
                      {"model", model.to_json()}},
                     global);
    if (evolve->parsed())
      return execute({{"type", "evolve"},
                      {"name", name},
                      {"model", model.to_json()},
                      {"state", state_from_flags(state, global.seed)},
                      {"lambda", lambda},
                      {"k_fold", k_fold},
                      {"times", times.to_json()}},
                     global);
    if (markov->parsed())
      return execute({{"type", "markov-scan"},
                      {"name", name},
                      {"model", model.to_json()},
                      {"lambda", lambda},
                      {"times", times.to_json()}},
                     global);
    if (coarse->parsed())
      return execute({{"type", "coarse"},
                      {"name", name},
                      {"model", model.to_json()},
                      {"lambda", lambda},
                      {"far_threshold", far},
                      {"near_threshold", near},
                      {"probe", probe},
                      {"times", times.to_json()}},
                     global);
    if (opensys->parsed()) {
      json inter;
      if (!interaction_json.empty() && interaction_json.front() == '@') {
        std::ifstream in(interaction_json.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        inter = json::parse(buf.str());
      } else {
        inter = json::parse(interaction_json);
      }
      return execute({{"type", "opensys"},
                      {"name", name},
                      {"interaction", inter},
                      {"env_state", state_from_flags(env_state, global.seed)},
                      {"lambda", lambda},
                      {"t0", t0},
                      {"times", times.to_json()}},
                     global);
    }
    if (classify->parsed()) {
      json states = json::array();
      for (const auto &s : cl_states)
        states.push_back(state_from_flags(s, global.seed));
      json task = {{"type", "classify"},
                   {"name", name},
                   {"model", model.to_json()},
                   {"states", states}};
      if (classify->count("--lambda"))
        task["lambda"] = lambda_cl;
      return execute(task, global);
    }
    if (run->parsed())
      return lts::run_scenario(scenario_path, global.out_dir, global.seed);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
