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

#include "lts/scenario.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lts/coarse.hpp"
#include "lts/io.hpp"
#include "lts/markov.hpp"

namespace lts {

namespace {

using nlohmann::json;

std::string require_string(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw std::invalid_argument(std::string("missing string field '") + key +
                                "'");
  return j.at(key).get<std::string>();
}

double require_number(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw std::invalid_argument(std::string("missing numeric field '") + key +
                                "'");
  return j.at(key).get<double>();
}

json domain_report_to_json(const DomainReport &r) {
  json out;
  out["d_param"] = r.d_param;
  out["r_param"] = r.r_param;
  if (r.k_feasible)
    out["k_feasible"] = {r.k_feasible->first, r.k_feasible->second};
  else
    out["k_feasible"] = nullptr;
  out["k_chosen"] = r.k_chosen;
  out["delta_E"] = r.delta_E;
  out["x"] = r.x;
  out["r_small"] = r.r_small;
  out["s"] = r.s;
  out["lambda"] = r.lambda;
  out["domain"] = to_string(r.domain);
  if (r.fidelity_floor)
    out["fidelity_floor"] = *r.fidelity_floor;
  else
    out["fidelity_floor"] = nullptr;
  out["pairwise_resolvable"] = r.pairwise_resolvable;
  out["notes"] = r.notes;
  return out;
}

json spectrum_task(const json &task, const std::filesystem::path &out_dir,
                   const std::string &name) {
  const auto spec = build_spectrum(task.at("model"));
  std::string csv = "level,energy,multiplicity\n";
  for (int m = 0; m < spec->level_count(); ++m)
    csv += csv_row({std::to_string(m), format_float(spec->energy(m)),
                    std::to_string(spec->multiplicity(m))});
  const auto path = out_dir / (name + "_levels.csv");
  write_file_atomic(path, csv);
  return {{"levels", spec->level_count()},
          {"dim", spec->dim()},
          {"energy_scale", spec->energy_scale()},
          {"outputs", {path.filename().string()}}};
}

json evolve_task(const json &task, const std::filesystem::path &out_dir,
                 const std::string &name, std::uint64_t seed) {
  const auto spec = build_spectrum(task.at("model"));
  const DensityMatrix rho0 = build_state(task.at("state"), *spec, seed);
  const double lambda = require_number(task, "lambda");
  const std::vector<double> times = parse_times(task.at("times"));
  const int k_fold = task.value("k_fold", 1);

  const EnergyStats stats = energy_stats(rho0, *spec);
  const DensityMatrix steady = luders_project(rho0, *spec);

  std::string csv = "t0,purity,distance_to_steady,max_coherence\n";
  json states = json::array();
  std::vector<std::string> warnings;
  for (double t0 : times) {
    LocalTimeParams params{t0, lambda, std::nullopt};
    if (warnings.empty())
      warnings = params.validate(*spec, stats);
    const BlockCoefficientMap map =
        k_fold == 1 ? exact_map(spec, params)
                    : kfold_family_map(spec, params, k_fold);
    const DensityMatrix sigma = apply(map, rho0);
    double max_coh = 0.0;
    const Matrix &c = map.coeff;
    for (int m = 0; m < c.rows(); ++m)
      for (int n = m + 1; n < c.cols(); ++n)
        max_coh = std::max(max_coh, std::abs(c(m, n)));
    csv += csv_row({format_float(t0), format_float(sigma.purity()),
                    format_float(trace_distance(sigma, steady)),
                    format_float(max_coh)});
    states.push_back(matrix_to_json(sigma.matrix()));
  }
  const auto csv_path = out_dir / (name + "_trajectory.csv");
  const auto json_path = out_dir / (name + "_states.json");
  write_file_atomic(csv_path, csv);
  write_file_atomic(json_path,
                    json{{"times", times}, {"states", states}}.dump(2) + "\n");
  return {{"dim", spec->dim()},
          {"warnings", warnings},
          {"outputs",
           {csv_path.filename().string(), json_path.filename().string()}}};
}

json markov_scan_task(const json &task, const std::filesystem::path &out_dir,
                      const std::string &name) {
  const auto spec = build_spectrum(task.at("model"));
  const double lambda = require_number(task, "lambda");
  const std::vector<double> times = parse_times(task.at("times"));
  std::vector<BlockCoefficientMap> family;
  family.reserve(times.size());
  for (double t : times)
    family.push_back(exact_map(spec, {t, lambda, std::nullopt}));
  const MarkovianityVerdict verdict = markovianity_verdict(times, family);

  std::string csv =
      "i,j,t_initial,t_total,min_eigenvalue,cp,composition_defect\n";
  for (const auto &pair : verdict.pairs)
    csv += csv_row({std::to_string(pair.i), std::to_string(pair.j),
                    format_float(times[pair.i]), format_float(times[pair.j]),
                    format_float(pair.intermediate_cp.min_eigenvalue),
                    pair.intermediate_cp.is_cp ? "1" : "0",
                    pair.composition_defect
                        ? format_float(*pair.composition_defect)
                        : ""});
  const auto path = out_dir / (name + "_pairs.csv");
  write_file_atomic(path, csv);
  return {{"verdict", to_string(verdict.verdict)},
          {"detail", verdict.detail},
          {"outputs", {path.filename().string()}}};
}

json coarse_task(const json &task, const std::filesystem::path &out_dir,
                 const std::string &name) {
  const auto spec = build_spectrum(task.at("model"));
  const double lambda = require_number(task, "lambda");
  const double far = task.value("far_threshold", kDefaultFarThreshold);
  const double near = task.value("near_threshold", kDefaultNearThreshold);
  const std::vector<double> times = parse_times(task.at("times"));

  const CoarseGraining cg = build_coarse_graining(spec, lambda, far, near);
  std::optional<RealVector> probe;
  if (task.value("probe", std::string("uniform")) == "uniform")
    probe = uniform_probe(*spec);
  const CpScanReport scan = cp_scan(cg, times, probe);

  json groups = json::array();
  for (const auto &g : cg.groups)
    groups.push_back({{"representative", g.representative},
                      {"companions", g.companions},
                      {"delta", g.delta},
                      {"g_m", g.g_m},
                      {"g_upper", g.g_upper}});
  const auto groups_path = out_dir / (name + "_groups.json");
  write_file_atomic(groups_path,
                    json{{"groups", groups}, {"g", cg.g}}.dump(2) + "\n");

  std::string csv = "t,min_eigenvalue,min_eigenvalue_companion_unit,criterion\n";
  for (std::size_t i = 0; i < scan.times.size(); ++i)
    csv += csv_row({format_float(scan.times[i]),
                    format_float(scan.min_eigs[i]),
                    format_float(scan.min_eigs_incl[i]),
                    probe ? format_float(scan.criteria[i]) : ""});
  const auto scan_path = out_dir / (name + "_cp_scan.csv");
  write_file_atomic(scan_path, csv);

  double max_div_defect = 0.0;
  if (times.size() >= 2 && times.back() > 0) {
    const double split =
        times.front() > 0 ? times.front() : 0.5 * times.back();
    max_div_defect = check_divisibility(cg, times.back(), split);
  }
  return {{"groups", cg.groups.size()},
          {"g", cg.g},
          {"eig_violation_fraction", scan.eig_violation_fraction},
          {"criterion_violation_fraction", scan.criterion_violation_fraction},
          {"divisibility_defect", max_div_defect},
          {"outputs",
           {groups_path.filename().string(), scan_path.filename().string()}}};
}

json opensys_task(const json &task, const std::filesystem::path &out_dir,
                  const std::string &name, std::uint64_t seed) {
  const auto &ij = task.at("interaction");
  RealMatrix e_grid;
  {
    const auto &rows = ij.at("e_grid");
    if (!rows.is_array() || rows.empty())
      throw std::invalid_argument("interaction e_grid must be a 2d array");
    e_grid.resize(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != static_cast<std::size_t>(e_grid.cols()))
        throw std::invalid_argument("ragged e_grid");
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        e_grid(r, c) = rows[r][c].get<double>();
    }
  }
  auto get_dims = [&](const char *key, Eigen::Index n) {
    std::vector<std::int64_t> dims(n, 1);
    if (ij.contains(key))
      dims = ij.at(key).get<std::vector<std::int64_t>>();
    return dims;
  };
  const auto inter = std::make_shared<PureDecoherenceInteraction>(
      e_grid, get_dims("sys_dims", e_grid.rows()),
      get_dims("env_dims", e_grid.cols()));

  // The environment state only enters through its block probabilities, so a
  // placeholder spectrum over the environment indices is enough here.
  std::vector<double> env_levels(inter->env_dim());
  for (std::size_t i = 0; i < env_levels.size(); ++i)
    env_levels[i] = static_cast<double>(i);
  const auto env_spec =
      std::make_shared<SpectralDecomposition>(from_diagonal(env_levels));
  const DensityMatrix rho_env =
      build_state(task.at("env_state"), *env_spec, seed);

  const double lambda = require_number(task, "lambda");
  const std::vector<double> times = parse_times(task.at("times"));
  const DecoherenceProfile profile =
      decoherence_profile(*inter, rho_env, lambda, times);

  std::string csv = "t,max_offdiag_modulus\n";
  for (std::size_t i = 0; i < profile.times.size(); ++i)
    csv += csv_row({format_float(profile.times[i]),
                    format_float(profile.max_moduli[i])});
  const auto csv_path = out_dir / (name + "_decoherence.csv");
  write_file_atomic(csv_path, csv);

  const double t0 = task.value("t0", times.front());
  const BlockCoefficientMap b = reduced_exact_map(*inter, rho_env, lambda, t0);
  const auto b_path = out_dir / (name + "_b_matrix.json");
  write_file_atomic(
      b_path, json{{"t0", t0}, {"matrix", matrix_to_json(b.coeff)}}.dump(2) +
                  "\n");

  json summary = {
      {"degenerate", inter->degenerate()},
      {"decoherence_time", profile.decoherence_time
                               ? json(*profile.decoherence_time)
                               : json(nullptr)},
      {"recurrence_time", profile.recurrence_time
                              ? json(*profile.recurrence_time)
                              : json(nullptr)},
      {"outputs",
       {csv_path.filename().string(), b_path.filename().string()}}};

  if (task.contains("gamma")) {
    RealMatrix gamma;
    const auto &grows = task.at("gamma");
    gamma.resize(grows.size(), grows.size());
    for (std::size_t r = 0; r < grows.size(); ++r)
      for (std::size_t c = 0; c < grows.size(); ++c)
        gamma(r, c) = grows[r][c].get<double>();
    std::vector<RealVector> a_values;
    for (const auto &a : task.at("a_values"))
      a_values.push_back(real_vector_from_json(a));
    const LtsLindbladComparison cmp =
        lts_vs_lindblad(*inter, rho_env, lambda, gamma, a_values, times);
    std::string lcsv = "t,m,n,lts_modulus,lindblad_envelope\n";
    for (std::size_t ti = 0; ti < cmp.times.size(); ++ti)
      for (std::size_t p = 0; p < cmp.pairs.size(); ++p)
        lcsv += csv_row({format_float(cmp.times[ti]),
                         std::to_string(cmp.pairs[p].first),
                         std::to_string(cmp.pairs[p].second),
                         format_float(cmp.lts_moduli[p][ti]),
                         format_float(cmp.lindblad_envelope[p][ti])});
    const auto lpath = out_dir / (name + "_lindblad.csv");
    write_file_atomic(lpath, lcsv);
    summary["outputs"].push_back(lpath.filename().string());
  }
  return summary;
}

json classify_task(const json &task, const std::filesystem::path &out_dir,
                   const std::string &name, std::uint64_t seed) {
  const auto spec = build_spectrum(task.at("model"));
  ClassifyOptions options;
  if (task.contains("lambda"))
    options.lambda_policy = LambdaPolicy::explicit_value(
        require_number(task, "lambda"));
  else
    options.lambda_policy =
        LambdaPolicy::minimal(task.value("lambda_multiplier", 1.1));
  options.pop_tol = task.value("pop_tol", options.pop_tol);
  options.d_hi = task.value("d_hi", options.d_hi);
  options.r_hi = task.value("r_hi", options.r_hi);
  options.fid_tol = task.value("fid_tol", options.fid_tol);
  options.r_small = task.value("r_small", options.r_small);
  options.s = task.value("s", options.s);

  const auto &states = task.at("states");
  if (!states.is_array() || states.empty())
    throw std::invalid_argument("classify task needs a nonempty state list");

  json reports = json::array();
  std::string csv =
      "index,domain,d_param,r_param,k_lo,k_hi,k_chosen,delta_E,x,lambda,"
      "fidelity_floor,pairwise_resolvable\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const DensityMatrix rho =
        build_state(states[i], *spec, seed + static_cast<std::uint64_t>(i));
    const DomainReport r = classify_state(*spec, rho, options);
    reports.push_back(domain_report_to_json(r));
    csv += csv_row(
        {std::to_string(i), to_string(r.domain), format_float(r.d_param),
         format_float(r.r_param),
         r.k_feasible ? format_float(r.k_feasible->first) : "",
         r.k_feasible ? format_float(r.k_feasible->second) : "",
         format_float(r.k_chosen), format_float(r.delta_E),
         format_float(r.x), format_float(r.lambda),
         r.fidelity_floor ? format_float(*r.fidelity_floor) : "",
         r.pairwise_resolvable ? "1" : "0"});
  }
  const auto json_path = out_dir / (name + "_reports.json");
  const auto csv_path = out_dir / (name + "_classify.csv");
  write_file_atomic(json_path, json{{"reports", reports}}.dump(2) + "\n");
  write_file_atomic(csv_path, csv);

  json counts = json::object();
  for (const auto &r : reports) {
    const std::string d = r.at("domain").get<std::string>();
    counts[d] = (counts.contains(d) ? counts[d].get<int>() : 0) + 1;
  }
  return {{"states", states.size()},
          {"counts", counts},
          {"outputs",
           {json_path.filename().string(), csv_path.filename().string()}}};
}

} // namespace

std::shared_ptr<const SpectralDecomposition>
build_spectrum(const nlohmann::json &model) {
  const std::string kind = require_string(model, "kind");
  if (kind == "spin")
    return std::make_shared<SpectralDecomposition>(
        spin_ensemble(static_cast<int>(require_number(model, "n")),
                      model.value("omega0", 1.0)));
  if (kind == "oscillator")
    return std::make_shared<SpectralDecomposition>(oscillator_modes(
        static_cast<int>(require_number(model, "modes")),
        model.value("omega0", 1.0),
        static_cast<int>(require_number(model, "nu_max"))));
  if (kind == "diagonal") {
    if (model.contains("degeneracies")) {
      // Explicit (energy, multiplicity) pairs.
      const auto energies =
          model.at("energies").get<std::vector<double>>();
      const auto degs =
          model.at("degeneracies").get<std::vector<std::int64_t>>();
      if (energies.size() != degs.size())
        throw std::invalid_argument(
            "energies and degeneracies must have equal length");
      RealVector e(energies.size());
      for (std::size_t i = 0; i < energies.size(); ++i)
        e(static_cast<Eigen::Index>(i)) = energies[i];
      double scale = model.value("energy_scale", 0.0);
      if (scale <= 0) {
        scale = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 1; i < e.size(); ++i)
          scale = std::min(scale, e(i) - e(i - 1));
      }
      return std::make_shared<SpectralDecomposition>(e, degs, scale);
    }
    return std::make_shared<SpectralDecomposition>(from_diagonal(
        model.at("energies").get<std::vector<double>>(),
        model.value("degeneracy_tol", 1e-9)));
  }
  if (kind == "hermitian")
    return std::make_shared<SpectralDecomposition>(
        from_hermitian(matrix_from_json(model.at("matrix")),
                       model.value("degeneracy_tol", 1e-9)));
  throw std::invalid_argument("unknown model kind '" + kind + "'");
}

DensityMatrix build_state(const nlohmann::json &state,
                          const SpectralDecomposition &spec,
                          std::uint64_t seed) {
  const std::string kind = require_string(state, "kind");
  if (kind == "extreme")
    return from_pure(
        extreme_superposition(spec, state.value("sign", 1) >= 0 ? 1 : -1));
  if (kind == "maximally_mixed") {
    Matrix m = Matrix::Identity(spec.dim(), spec.dim());
    m /= static_cast<double>(spec.dim());
    return DensityMatrix(std::move(m));
  }
  if (kind == "random") {
    std::mt19937_64 rng(state.value("seed", seed));
    if (state.value("pure", false))
      return from_pure(random_pure_vector(spec.dim(), rng));
    return random_state(spec.dim(), rng);
  }
  if (kind == "pure") {
    const auto &amps = state.at("amplitudes");
    Vector psi(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i)
      psi(static_cast<Eigen::Index>(i)) =
          Complex(amps[i][0].get<double>(), amps[i][1].get<double>());
    return from_pure(psi);
  }
  if (kind == "matrix")
    return DensityMatrix(matrix_from_json(state.at("matrix")));
  throw std::invalid_argument("unknown state kind '" + kind + "'");
}

std::vector<double> parse_times(const nlohmann::json &times) {
  if (times.is_array()) {
    auto out = times.get<std::vector<double>>();
    if (out.empty())
      throw std::invalid_argument("empty time grid");
    return out;
  }
  if (times.is_object()) {
    const double start = require_number(times, "start");
    const double stop = require_number(times, "stop");
    const int count = static_cast<int>(require_number(times, "count"));
    if (count < 1)
      throw std::invalid_argument("time grid count must be >= 1");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
      out[i] = count == 1 ? start
                          : start + (stop - start) * i / (count - 1);
    return out;
  }
  throw std::invalid_argument("times must be an array or {start,stop,count}");
}

nlohmann::json run_task(const nlohmann::json &task,
                        const std::filesystem::path &out_dir,
                        std::uint64_t seed) {
  const std::string type = require_string(task, "type");
  const std::string name = task.value("name", type);
  std::filesystem::create_directories(out_dir);
  if (type == "spectrum")
    return spectrum_task(task, out_dir, name);
  if (type == "evolve")
    return evolve_task(task, out_dir, name, seed);
  if (type == "markov-scan")
    return markov_scan_task(task, out_dir, name);
  if (type == "coarse")
    return coarse_task(task, out_dir, name);
  if (type == "opensys")
    return opensys_task(task, out_dir, name, seed);
  if (type == "classify")
    return classify_task(task, out_dir, name, seed);
  throw std::invalid_argument("unknown task type '" + type + "'");
}

int run_scenario(const std::filesystem::path &scenario_path,
                 const std::filesystem::path &out_dir, std::uint64_t seed) {
  std::ifstream in(scenario_path);
  if (!in) {
    std::fprintf(stderr, "cannot read scenario file %s\n",
                 scenario_path.string().c_str());
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string raw = buffer.str();

  json scenario;
  try {
    scenario = json::parse(raw);
  } catch (const json::parse_error &e) {
    std::fprintf(stderr, "%s: %s\n", scenario_path.string().c_str(),
                 e.what());
    return 2;
  }
  if (!scenario.is_object() || !scenario.contains("tasks") ||
      !scenario.at("tasks").is_array()) {
    std::fprintf(stderr, "%s: scenario must be an object with a 'tasks' list\n",
                 scenario_path.string().c_str());
    return 2;
  }
  const std::filesystem::path dir =
      scenario.contains("out_dir")
          ? std::filesystem::path(scenario.at("out_dir").get<std::string>())
          : out_dir;
  const std::uint64_t effective_seed =
      scenario.value("seed", static_cast<std::int64_t>(seed));

  const auto start = std::chrono::steady_clock::now();
  json task_results = json::array();
  for (const auto &task : scenario.at("tasks")) {
    json entry;
    entry["type"] = task.value("type", "?");
    entry["name"] = task.value("name", entry["type"].get<std::string>());
    try {
      entry["summary"] = run_task(task, dir, effective_seed);
      entry["status"] = "ok";
    } catch (const std::exception &e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
    }
    task_results.push_back(std::move(entry));
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  json manifest = {{"scenario", scenario_path.filename().string()},
                   {"input_hash", fnv1a_hex(raw)},
                   {"version", kVersion},
                   {"seed", effective_seed},
                   {"wall_time_ms", elapsed},
                   {"tasks", task_results}};
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

} // namespace lts
