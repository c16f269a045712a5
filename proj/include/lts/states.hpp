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

#ifndef LTS_STATES_HPP
#define LTS_STATES_HPP

#include <cstdint>
#include <random>

#include "lts/spectral.hpp"

namespace lts {

/// Trace-one positive-semidefinite Hermitian operator. Construction
/// validates; inputs failing the positivity tolerance are rejected, not
/// repaired.
class DensityMatrix {
public:
  explicit DensityMatrix(Matrix matrix);

  const Matrix &matrix() const { return matrix_; }
  std::int64_t dim() const { return matrix_.rows(); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
  Matrix matrix_;
};

/// Outer product of the normalized vector.
DensityMatrix from_pure(const Vector &amplitudes);

struct EnergyStats {
  double mean;
  double std_dev;
  double mean_above_ground;
};

/// <H>, Delta H and <H> - E_g of a state in the given spectrum. All three
/// are invariant under the exact map.
EnergyStats energy_stats(const DensityMatrix &rho,
                         const SpectralDecomposition &spec);

/// Sum_m P_m rho P_m: the block-diagonal part in the eigenblock structure
/// (the ergodic average / unique steady state).
DensityMatrix luders_project(const DensityMatrix &rho,
                             const SpectralDecomposition &spec);

/// tr(P_m rho) for every level, in level order.
RealVector level_populations(const DensityMatrix &rho,
                             const SpectralDecomposition &spec);

/// sqrt(<psi| rho |psi>) for a pure reference state.
double fidelity(const DensityMatrix &rho, const Vector &psi);

/// (1/2) * sum |eigenvalues of a - b|.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Hilbert-Schmidt sample G G^dag / tr(G G^dag) with complex standard-normal
/// G.
DensityMatrix random_state(std::int64_t dim, std::mt19937_64 &rng);

/// Random unit vector, Haar via normalized complex Gaussian.
Vector random_pure_vector(std::int64_t dim, std::mt19937_64 &rng);

/// (|E_max> + sign * |E_g>)/sqrt(2) using the first basis vector of the
/// extreme levels.
Vector extreme_superposition(const SpectralDecomposition &spec, int sign = 1);

} // namespace lts

#endif
