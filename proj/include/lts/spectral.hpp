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

#ifndef LTS_SPECTRAL_HPP
#define LTS_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace lts {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// A Hamiltonian given as distinct eigenvalues with orthogonal
/// eigenprojectors. Levels are stored compactly as (energy, multiplicity)
/// pairs; dense projectors are materialized on demand. When `basis` is
/// absent the eigenbasis is the computational basis and level m occupies
/// the index range [offset(m), offset(m) + multiplicity(m)).
class SpectralDecomposition {
public:
  SpectralDecomposition(RealVector energies, std::vector<std::int64_t> mults,
                        double energy_scale,
                        std::optional<Matrix> basis = std::nullopt);

  int level_count() const { return static_cast<int>(energies_.size()); }
  std::int64_t dim() const { return dim_; }
  double energy(int m) const { return energies_(m); }
  const RealVector &energies() const { return energies_; }
  std::int64_t multiplicity(int m) const { return mults_[m]; }
  const std::vector<std::int64_t> &multiplicities() const { return mults_; }
  std::int64_t offset(int m) const { return offsets_[m]; }
  double energy_scale() const { return energy_scale_; }
  bool has_basis() const { return basis_.has_value(); }
  const Matrix &basis() const { return *basis_; }

  double ground_energy() const { return energies_(0); }
  double max_energy() const { return energies_(energies_.size() - 1); }
  /// E = E_max - E_g, the full spectral width.
  double spectral_width() const { return max_energy() - ground_energy(); }

  /// Level index of a computational / eigenbasis coordinate.
  int level_of_index(std::int64_t i) const;

  /// Dense projector P_m (d x d). Requires a dimension small enough to
  /// materialize.
  Matrix projector(int m) const;

  /// Sum_m E_m P_m, dense.
  Matrix hamiltonian() const;

private:
  RealVector energies_;
  std::vector<std::int64_t> mults_;
  std::vector<std::int64_t> offsets_;
  std::int64_t dim_;
  double energy_scale_;
  std::optional<Matrix> basis_;
};

/// Groups a sorted list of energies into distinct levels. Values within
/// deg_tol * max(1, |E|) of each other merge into one level.
SpectralDecomposition from_diagonal(const std::vector<double> &energies,
                                    double deg_tol = 1e-9);

/// Eigendecomposition of a Hermitian matrix with degeneracy grouping.
/// The input is symmetrized as (M + M^dag)/2 before solving.
SpectralDecomposition from_hermitian(const Matrix &matrix,
                                     double deg_tol = 1e-9);

/// N noninteracting spin-1/2 particles, H = omega0 * sum_i S_iz.
/// Levels (-N/2 + p) * omega0 with degeneracy binomial(N, p), d = 2^N.
SpectralDecomposition spin_ensemble(int n_spins, double omega0);

/// M noninteracting oscillators of common frequency omega0 with a total
/// excitation cutoff nu_max. Levels (nu + M/2) * omega0 with degeneracy
/// binomial(nu + M - 1, M - 1).
SpectralDecomposition oscillator_modes(int n_modes, double omega0,
                                       int nu_max);

} // namespace lts

#endif
