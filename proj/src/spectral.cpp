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

#include "lts/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lts {

SpectralDecomposition::SpectralDecomposition(RealVector energies,
                                             std::vector<std::int64_t> mults,
                                             double energy_scale,
                                             std::optional<Matrix> basis)
    : energies_(std::move(energies)), mults_(std::move(mults)),
      energy_scale_(energy_scale), basis_(std::move(basis)) {
  if (energies_.size() == 0)
    throw std::invalid_argument("empty spectrum");
  if (static_cast<std::size_t>(energies_.size()) != mults_.size())
    throw std::invalid_argument("energies/multiplicities size mismatch");
  for (Eigen::Index m = 1; m < energies_.size(); ++m)
    if (!(energies_(m) > energies_(m - 1)))
      throw std::invalid_argument("energies must be strictly increasing");
  offsets_.resize(mults_.size());
  std::int64_t off = 0;
  for (std::size_t m = 0; m < mults_.size(); ++m) {
    if (mults_[m] <= 0)
      throw std::invalid_argument("multiplicities must be positive");
    offsets_[m] = off;
    off += mults_[m];
  }
  dim_ = off;
  if (basis_) {
    if (basis_->rows() != dim_ || basis_->cols() != dim_)
      throw std::invalid_argument("basis must be d x d");
  }
  if (!(energy_scale_ > 0))
    throw std::invalid_argument("energy scale must be positive");
}

int SpectralDecomposition::level_of_index(std::int64_t i) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Matrix SpectralDecomposition::projector(int m) const {
  Matrix p = Matrix::Zero(dim_, dim_);
  const std::int64_t a = offset(m), g = multiplicity(m);
  if (basis_) {
    const Matrix cols = basis_->middleCols(a, g);
    p = cols * cols.adjoint();
  } else {
    for (std::int64_t i = a; i < a + g; ++i)
      p(i, i) = 1.0;
  }
  return p;
}

Matrix SpectralDecomposition::hamiltonian() const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (int m = 0; m < level_count(); ++m)
    h += energy(m) * projector(m);
  return h;
}

namespace {

// Groups adjacent sorted values within the relative tolerance; returns the
// level boundary positions [b_0 = 0, ..., b_N = n).
std::vector<std::size_t> group_boundaries(const std::vector<double> &sorted,
                                          double deg_tol) {
  std::vector<std::size_t> bounds{0};
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double ref = std::max(1.0, std::abs(sorted[i]));
    if (sorted[i] - sorted[bounds.back()] > deg_tol * ref)
      bounds.push_back(i);
  }
  bounds.push_back(sorted.size());
  return bounds;
}

double default_scale(const RealVector &energies) {
  double s = energies.cwiseAbs().maxCoeff();
  if (energies.size() > 1)
    s = std::max(s, energies(energies.size() - 1) - energies(0));
  return s > 0 ? s : 1.0;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace

SpectralDecomposition from_diagonal(const std::vector<double> &energies,
                                    double deg_tol) {
  if (energies.empty())
    throw std::invalid_argument("empty spectrum");
  if (deg_tol < 0)
    throw std::invalid_argument("deg_tol must be nonnegative");

  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return energies[a] < energies[b];
  });
  std::vector<double> sorted(energies.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    sorted[i] = energies[order[i]];

  const auto bounds = group_boundaries(sorted, deg_tol);
  const std::size_t n_levels = bounds.size() - 1;
  RealVector levels(n_levels);
  std::vector<std::int64_t> mults(n_levels);
  for (std::size_t m = 0; m < n_levels; ++m) {
    const std::size_t a = bounds[m], b = bounds[m + 1];
    levels(m) = std::accumulate(sorted.begin() + a, sorted.begin() + b, 0.0) /
                static_cast<double>(b - a);
    mults[m] = static_cast<std::int64_t>(b - a);
  }

  // Permutation of the computational basis that sorts by energy.
  const std::int64_t d = static_cast<std::int64_t>(energies.size());
  Matrix basis = Matrix::Zero(d, d);
  bool is_identity = true;
  for (std::int64_t i = 0; i < d; ++i) {
    basis(static_cast<Eigen::Index>(order[i]), i) = 1.0;
    if (static_cast<std::int64_t>(order[i]) != i)
      is_identity = false;
  }
  std::optional<Matrix> maybe_basis;
  if (!is_identity)
    maybe_basis = std::move(basis);
  return SpectralDecomposition(levels, mults, default_scale(levels),
                               std::move(maybe_basis));
}

SpectralDecomposition from_hermitian(const Matrix &matrix, double deg_tol) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("matrix must be square");
  if (matrix.rows() == 0)
    throw std::invalid_argument("empty spectrum");
  const Matrix sym = 0.5 * (matrix + matrix.adjoint());
  if ((sym - matrix).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, sym.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");

  std::vector<double> evals(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + sym.rows());
  const auto bounds = group_boundaries(evals, deg_tol);
  const std::size_t n_levels = bounds.size() - 1;
  RealVector levels(n_levels);
  std::vector<std::int64_t> mults(n_levels);
  for (std::size_t m = 0; m < n_levels; ++m) {
    const std::size_t a = bounds[m], b = bounds[m + 1];
    levels(m) = std::accumulate(evals.begin() + a, evals.begin() + b, 0.0) /
                static_cast<double>(b - a);
    mults[m] = static_cast<std::int64_t>(b - a);
  }
  return SpectralDecomposition(levels, mults, default_scale(levels),
                               solver.eigenvectors());
}

SpectralDecomposition spin_ensemble(int n_spins, double omega0) {
  if (n_spins < 1)
    throw std::invalid_argument("n_spins must be >= 1");
  if (!(omega0 > 0))
    throw std::invalid_argument("omega0 must be positive");
  RealVector levels(n_spins + 1);
  std::vector<std::int64_t> mults(n_spins + 1);
  for (int p = 0; p <= n_spins; ++p) {
    levels(p) = (-0.5 * n_spins + p) * omega0;
    mults[p] = binomial(n_spins, p);
  }
  return SpectralDecomposition(levels, mults, omega0);
}

SpectralDecomposition oscillator_modes(int n_modes, double omega0,
                                       int nu_max) {
  if (n_modes < 1)
    throw std::invalid_argument("n_modes must be >= 1");
  if (nu_max < 1)
    throw std::invalid_argument("nu_max must be >= 1");
  if (!(omega0 > 0))
    throw std::invalid_argument("omega0 must be positive");
  RealVector levels(nu_max + 1);
  std::vector<std::int64_t> mults(nu_max + 1);
  for (int nu = 0; nu <= nu_max; ++nu) {
    levels(nu) = (nu + 0.5 * n_modes) * omega0;
    mults[nu] = binomial(nu + n_modes - 1, n_modes - 1);
  }
  return SpectralDecomposition(levels, mults, omega0);
}

} // namespace lts
