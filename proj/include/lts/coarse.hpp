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

#ifndef LTS_COARSE_HPP
#define LTS_COARSE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "lts/block_map.hpp"
#include "lts/markov.hpp"

namespace lts {

inline constexpr double kDefaultFarThreshold = 0.018315638888734179; // e^-4
inline constexpr double kDefaultNearThreshold = 0.9;

/// One coarse-graining group: a representative level and its companion set
/// {nu_m}, with the representative gap delta_m.
struct CoarseGroup {
  int representative;          // level index
  std::vector<int> companions; // level indices, ascending
  double delta;                // mean representative-to-companion gap
  std::int64_t g_m;            // tr P_m
  std::int64_t g_upper;        // tr Pi^(m) = sum of companion multiplicities
};

struct CoarseGraining {
  std::shared_ptr<const SpectralDecomposition> spec;
  std::vector<CoarseGroup> groups;
  std::int64_t g; // max_m tr Pi^(m)

  int group_of_level(int level) const;
};

///// Greedy partition of the energy-sorted levels: consecutive levels whose
/// pairwise Gaussian factor is >= near_threshold join one group; the lowest
/// member is the representative. Throws "no admissible coarse-graining"
/// when a cross-group pair has factor > far_threshold.
CoarseGraining
build_coarse_graining(std::shared_ptr<const SpectralDecomposition> spec,
                      double lambda,
                      double far_threshold = kDefaultFarThreshold,
                      double near_threshold = kDefaultNearThreshold);

/// Coarse graining from an explicit partition (each group lists its level
/// indices, representative first). Validates the partition; gap thresholds
/// are not re-checked.
CoarseGraining
coarse_graining_from_groups(std::shared_ptr<const SpectralDecomposition> spec,
                            const std::vector<std::vector<int>> &groups);

///// The approximate map: unit diagonal, exp(-i t0 delta_m) on the
/// representative-companion blocks, zero elsewhere. With
/// companion_unit = true the implicit companion-companion blocks carry
/// coefficient 1 instead of 0 (the alternative reading; both are reported
/// by cp_scan).
BlockCoefficientMap approx_map(const CoarseGraining &cg, double t0,
                               bool companion_unit = false);

/// max coefficient deviation between approx(t0) and
/// approx(t0 - t') o approx(t'); an exact zero of the construction.
double check_divisibility(const CoarseGraining &cg, double t0,
                          double t_prime);

struct CpScanReport {
  std::vector<double> times;
  std::vector<double> min_eigs;      // coefficient-matrix min eigenvalue
  std::vector<double> min_eigs_incl; // companion-unit convention
  std::vector<double> criteria;      // probe criterion, when a probe is given
  double eig_violation_fraction = 0.0;
  double criterion_violation_fraction = 0.0;
  std::int64_t g = 0;
};

/// Time-resolved CP scan of the approximate map. min_eigs is the exact CP
/// criterion; when a probe p (nonnegative, sum p_i^2 = 1, one entry per
/// basis index) is supplied, the probe criterion
///   (1/d) [ sum_m (sum_{i in P_m} p_i)^2
///           + 2 sum_groups cos(delta_m t) chi_m ]
/// is evaluated per time, with chi_m the representative/companion probe
/// masses.
CpScanReport cp_scan(const CoarseGraining &cg,
                     const std::vector<double> &time_grid,
                     const std::optional<RealVector> &probe = std::nullopt,
                     double psd_tol = kPsdTol);

/// Uniform probe p_i = 1/sqrt(d).
RealVector uniform_probe(const SpectralDecomposition &spec);

} // namespace lts

#endif
