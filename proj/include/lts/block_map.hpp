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

#ifndef LTS_BLOCK_MAP_HPP
#define LTS_BLOCK_MAP_HPP

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lts/spectral.hpp"
#include "lts/states.hpp"

namespace lts {

/// Parameters of the local-time Gaussian weight
/// rho(t) = sqrt(lambda/pi) exp(-lambda (t - t0)^2).
/// lambda = +inf recovers sharp unitary evolution.
struct LocalTimeParams {
  double t0 = 0.0;
  double lambda = 1.0;
  std::optional<double> delta_t;

  /// Checks lambda > 0 and, when delta_t is given, the window constraint
  /// tau_min > delta_t > 1/sqrt(lambda) with
  /// tau_min = max{pi/(2 dH), pi/(2 (<H> - E_g))}. Returns soft warnings
  /// (e.g. lambda <= C^2); hard violations throw.
  std::vector<std::string>
  validate(const SpectralDecomposition &spec,
           const std::optional<EnergyStats> &stats = std::nullopt) const;
};

/// A superoperator acting as coefficient-wise (Schur) multiplication on the
/// eigenblock pairs of a fixed spectral decomposition:
///   rho -> sum_{m,n} coeff(m,n) P_m rho P_n.
struct BlockCoefficientMap {
  std::shared_ptr<const SpectralDecomposition> spec;
  Matrix coeff; // N x N, unit diagonal, coeff(n,m) = conj(coeff(m,n))
  // Phase reference instant for the Kraus convention; NaN when the map has
  // no single associated instant.
  double t0 = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;

  int level_count() const { return static_cast<int>(coeff.rows()); }
};

struct KrausSet {
  std::vector<Matrix> operators;
  RealVector weights; // eigenvalues gamma_k >= 0 of the coefficient matrix
};

/// coeff(m,n) = exp(-i t0 (E_m - E_n)) exp(-(E_m - E_n)^2 / 4 lambda).
BlockCoefficientMap
exact_map(std::shared_ptr<const SpectralDecomposition> spec,
          const LocalTimeParams &params);

/// coeff(m,n) = exp(-i t (E_m - E_n)): unitary conjugation as a block map.
BlockCoefficientMap
unitary_map(std::shared_ptr<const SpectralDecomposition> spec, double t);

/// Schur product of coefficients; valid because projector orthogonality
/// kills all cross terms.
BlockCoefficientMap compose(const BlockCoefficientMap &outer,
                            const BlockCoefficientMap &inner);

/// Family member for the interval (0, t0] split into k subintervals: the
/// Gaussian exponent is multiplied by k, the phase is unchanged.
BlockCoefficientMap
kfold_family_map(std::shared_ptr<const SpectralDecomposition> spec,
                 const LocalTimeParams &params, int k);

/// sum_{m,n} coeff(m,n) P_m X P_n for an arbitrary matrix.
Matrix apply_matrix(const BlockCoefficientMap &map, const Matrix &x);

/// Map application with density-matrix validation of the output.
DensityMatrix apply(const BlockCoefficientMap &map, const DensityMatrix &rho);

/// Eigendecomposes the coefficient matrix c = sum_k gamma_k v_k v_k^dag and
/// returns K_k = sqrt(gamma_k) sum_m v_k[m] P_m. Throws
/// "no Kraus form at this instant" when c is not positive semidefinite
/// (a physical CP-violation signal for approximate maps, not a bug).
KrausSet kraus_decomposition(const BlockCoefficientMap &map,
                             double psd_tol = 1e-10);

/// Frobenius norm of E_{(0,0)}[rho] - rho: the map at t0 = 0 is not the
/// identity, so the process has no differentiable start.
double identity_defect(std::shared_ptr<const SpectralDecomposition> spec,
                       double lambda, const DensityMatrix &rho);

struct PerturbedInitialState {
  DensityMatrix sigma_prime0;
  double deviation; // trace distance to the unperturbed state
};

/// Initial-instant perturbation by a weak pre-interaction Hamiltonian:
/// sigma'(0) = sum_{p,q} exp(-(E'_p - E'_q)^2 / 4 lambda') p_p rho0 p_q.
PerturbedInitialState
initial_instant_perturbation(const SpectralDecomposition &pre_spec,
                             double lambda_prime, const DensityMatrix &rho0);

} // namespace lts

#endif
