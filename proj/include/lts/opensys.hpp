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

#ifndef LTS_OPENSYS_HPP
#define LTS_OPENSYS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "lts/block_map.hpp"
#include "lts/coarse.hpp"

namespace lts {

/// Pure-decoherence interaction H_int = sum_{a,b} E_ab P_a (x) Pi_b with
/// system blocks P_a (contiguous computational-basis index ranges of dim
/// d_S) and environment blocks Pi_b (dito, dim d_E).
class PureDecoherenceInteraction {
public:
  PureDecoherenceInteraction(RealMatrix e_grid,
                             std::vector<std::int64_t> sys_block_dims,
                             std::vector<std::int64_t> env_block_dims);

  const RealMatrix &e_grid() const { return e_grid_; }
  int sys_blocks() const { return static_cast<int>(sys_dims_.size()); }
  int env_blocks() const { return static_cast<int>(env_dims_.size()); }
  std::int64_t sys_dim() const { return d_sys_; }
  std::int64_t env_dim() const { return d_env_; }
  std::int64_t sys_block_dim(int a) const { return sys_dims_[a]; }
  std::int64_t env_block_dim(int b) const { return env_dims_[b]; }
  bool degenerate() const { return degenerate_; }

  /// Block structure of the system space as a pseudo spectral decomposition
  /// (the alpha index plays the role of the energy).
  std::shared_ptr<const SpectralDecomposition> sys_structure() const {
    return sys_structure_;
  }

  /// tr(Pi_b rho_E) for every environment block.
  RealVector env_probabilities(const DensityMatrix &rho_env) const;

private:
  RealMatrix e_grid_; // alpha x beta
  std::vector<std::int64_t> sys_dims_, env_dims_;
  std::int64_t d_sys_, d_env_;
  bool degenerate_;
  std::shared_ptr<const SpectralDecomposition> sys_structure_;
};

struct CoherenceFactors {
  Matrix b;                          // B_ag(t0)
  RealMatrix zeta;                   // sum_b gauss * q_b, bound on |B_ag|
  std::vector<RealMatrix> weights;   // p_b^(ag), one matrix slice per beta
};

/// B_ag(t0) = sum_b exp(-i t0 (E_ab - E_gb)) exp(-(E_ab - E_gb)^2/4 lambda)
///            tr(Pi_b rho_E); the reduced map over system blocks.
BlockCoefficientMap reduced_exact_map(const PureDecoherenceInteraction &inter,
                                      const DensityMatrix &rho_env,
                                      double lambda, double t0);

/// zeta and normalized weights of the coherence factors.
CoherenceFactors coherence_factors(const PureDecoherenceInteraction &inter,
                                   const DensityMatrix &rho_env,
                                   double lambda, double t0);

/// Gaussian exponent multiplied by k (k-interval family member); the
/// k -> infinity limit is the Lueders map over system blocks.
BlockCoefficientMap kfold_reduced(const PureDecoherenceInteraction &inter,
                                  const DensityMatrix &rho_env, double lambda,
                                  double t0, int k);

/// Lueders projection onto the system blocks: the unique steady state.
DensityMatrix steady_state(const PureDecoherenceInteraction &inter,
                           const DensityMatrix &rho_sys);

struct DecoherenceProfile {
  std::vector<double> times;
  std::vector<double> max_moduli; // max_{a != g} |B_ag(t)|
  std::optional<double> decoherence_time;
  std::optional<double> recurrence_time;
};

DecoherenceProfile decoherence_profile(const PureDecoherenceInteraction &inter,
                                       const DensityMatrix &rho_env,
                                       double lambda,
                                       const std::vector<double> &time_grid,
                                       double epsilon_dec = 0.05,
                                       int persistence = 10);

/// Coarse graining over the system's interaction-block index. Pairs (a, g)
/// are near when the Gaussian factor exp(-(E_ab - E_gb)^2/4 lambda) is
/// >= near_threshold for every beta, and cross-group pairs must have factor
/// <= far_threshold for every beta.
struct ReducedCoarseGraining {
  std::shared_ptr<const PureDecoherenceInteraction> inter;
  std::vector<CoarseGroup> groups; // over alpha indices
  RealMatrix deltas;               // group x beta: mean E_ab - E_{nu_a b}
  std::int64_t g_prime;            // max_a tr Pi^(a)
};

ReducedCoarseGraining build_reduced_coarse_graining(
    std::shared_ptr<const PureDecoherenceInteraction> inter, double lambda,
    double far_threshold = kDefaultFarThreshold,
    double near_threshold = kDefaultNearThreshold);

/// Eq-4.8-style map: unit diagonal,
/// sum_b exp(-i t0 delta_ab) tr(Pi_b rho_E) on (a, nu_a) blocks, zero
/// elsewhere. Divisible for all (t0, t').
BlockCoefficientMap approx_reduced_map(const ReducedCoarseGraining &rcg,
                                       const DensityMatrix &rho_env,
                                       double t0);

/// Time-resolved CP scan of the approximate reduced map: exact min
/// eigenvalue plus the probe criterion
///   (1/d)[ sum_a (sum p_i)^2 + eps(t) * 2 sum_a chi_a ]
/// with eps(t) = max_a 2 sum_b q_b cos(delta_ab t).
CpScanReport cp_scan_reduced(const ReducedCoarseGraining &rcg,
                             const DensityMatrix &rho_env,
                             const std::vector<double> &time_grid,
                             const std::optional<RealVector> &probe =
                                 std::nullopt,
                             double psd_tol = kPsdTol);

/// Gamma_mn = v_mn . gamma . v_mn with v_mn = (a_am - a_an); the analytic
/// dephasing rates of the comparator master equation.
RealMatrix dephasing_rates(const RealMatrix &gamma,
                           const std::vector<RealVector> &a_values,
                           double psd_tol = kPsdTol);

/// rho_mn(t) = rho_mn(0) exp(-Gamma_mn t / 2) (commutator term dropped).
DensityMatrix lindblad_dephasing(const RealMatrix &gamma,
                                 const std::vector<RealVector> &a_values,
                                 const DensityMatrix &rho0, double t);

struct LtsLindbladComparison {
  std::vector<double> times;
  // One row per off-diagonal pair (m < n): |B_mn|(t) and the Lindblad
  // envelope exp(-Gamma_mn t / 2).
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<double>> lts_moduli;
  std::vector<std::vector<double>> lindblad_envelope;
  std::vector<std::optional<double>> lts_crossing_time; // first |B| < 1/e
};

LtsLindbladComparison lts_vs_lindblad(const PureDecoherenceInteraction &inter,
                                      const DensityMatrix &rho_env,
                                      double lambda, const RealMatrix &gamma,
                                      const std::vector<RealVector> &a_values,
                                      const std::vector<double> &time_grid);

} // namespace lts

#endif
