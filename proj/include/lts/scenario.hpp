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

#ifndef LTS_SCENARIO_HPP
#define LTS_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "json.hpp"

#include "lts/classify.hpp"
#include "lts/opensys.hpp"

namespace lts {

/// Model specs: {"kind": "spin", "n": 4, "omega0": 1.0},
/// {"kind": "oscillator", "modes": 3, "omega0": 1.0, "nu_max": 6},
/// {"kind": "diagonal", "energies": [...], "degeneracies": [...]?},
/// {"kind": "hermitian", "matrix": {rows, cols, data}}.
std::shared_ptr<const SpectralDecomposition>
build_spectrum(const nlohmann::json &model);

/// State specs: {"kind": "extreme", "sign": 1}, {"kind": "maximally_mixed"},
/// {"kind": "random", "seed": 7?}, {"kind": "pure", "amplitudes": [[re,im]..]},
/// {"kind": "matrix", "matrix": {...}}. `seed` is the fallback RNG seed.
DensityMatrix build_state(const nlohmann::json &state,
                          const SpectralDecomposition &spec,
                          std::uint64_t seed);

/// Time grids: [t0, t1, ...] or {"start": a, "stop": b, "count": n}
/// (inclusive linspace).
std::vector<double> parse_times(const nlohmann::json &times);

/// Executes one task record. `type` selects the operation (spectrum,
/// evolve, markov-scan, coarse, opensys, classify); `name` stems the output
/// files written under out_dir. Returns a summary with an "outputs" list.
/// Throws on schema violations and numerical failures.
nlohmann::json run_task(const nlohmann::json &task,
                        const std::filesystem::path &out_dir,
                        std::uint64_t seed);

/// Runs every task of a scenario file, isolating per-task failures, and
/// writes manifest.json (input hash, version, wall time, task statuses).
/// Returns the process exit code: nonzero only for scenario-level errors.
int run_scenario(const std::filesystem::path &scenario_path,
                 const std::filesystem::path &out_dir, std::uint64_t seed);

inline constexpr const char *kVersion = "1.0.0";

} // namespace lts

#endif
