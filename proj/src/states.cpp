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

#include "lts/states.hpp"

#include <cmath>
#include <stdexcept>

namespace lts {

namespace {
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPosTol = 1e-10;

void check_dims(std::int64_t a, std::int64_t b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch");
}
} // namespace

DensityMatrix::DensityMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw std::invalid_argument("density matrix must be square and nonempty");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > kTraceTol ||
      std::abs(matrix_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPosTol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix from_pure(const Vector &amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0)
    throw std::invalid_argument("zero vector");
  const Vector psi = amplitudes / norm;
  return DensityMatrix(psi * psi.adjoint());
}

EnergyStats energy_stats(const DensityMatrix &rho,
                         const SpectralDecomposition &spec) {
  check_dims(rho.dim(), spec.dim());
  RealVector w;
  if (spec.has_basis())
    w = (spec.basis().adjoint() * rho.matrix() * spec.basis())
            .diagonal()
            .real();
  else
    w = rho.matrix().diagonal().real();
  double mean = 0.0, second = 0.0;
  for (int m = 0; m < spec.level_count(); ++m) {
    const double pop = w.segment(spec.offset(m), spec.multiplicity(m)).sum();
    mean += spec.energy(m) * pop;
    second += spec.energy(m) * spec.energy(m) * pop;
  }
  const double var = std::max(0.0, second - mean * mean);
  return {mean, std::sqrt(var), mean - spec.ground_energy()};
}

RealVector level_populations(const DensityMatrix &rho,
                             const SpectralDecomposition &spec) {
  check_dims(rho.dim(), spec.dim());
  RealVector w;
  if (spec.has_basis())
    w = (spec.basis().adjoint() * rho.matrix() * spec.basis())
            .diagonal()
            .real();
  else
    w = rho.matrix().diagonal().real();
  RealVector pops(spec.level_count());
  for (int m = 0; m < spec.level_count(); ++m)
    pops(m) = w.segment(spec.offset(m), spec.multiplicity(m)).sum();
  return pops;
}

DensityMatrix luders_project(const DensityMatrix &rho,
                             const SpectralDecomposition &spec) {
  check_dims(rho.dim(), spec.dim());
  Matrix a = spec.has_basis()
                 ? Matrix(spec.basis().adjoint() * rho.matrix() * spec.basis())
                 : rho.matrix();
  // Drop cross-level blocks.
  for (int m = 0; m < spec.level_count(); ++m)
    for (int n = 0; n < spec.level_count(); ++n) {
      if (m == n)
        continue;
      a.block(spec.offset(m), spec.offset(n), spec.multiplicity(m),
              spec.multiplicity(n))
          .setZero();
    }
  if (spec.has_basis())
    a = spec.basis() * a * spec.basis().adjoint();
  a = 0.5 * (a + a.adjoint().eval());
  return DensityMatrix(std::move(a));
}

double fidelity(const DensityMatrix &rho, const Vector &psi) {
  check_dims(rho.dim(), psi.size());
  const Vector unit = psi / psi.norm();
  const double val = (unit.adjoint() * rho.matrix() * unit)(0).real();
  return std::sqrt(std::max(0.0, val));
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
  check_dims(a.dim(), b.dim());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix() - b.matrix(),
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DensityMatrix random_state(std::int64_t dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j)
      g(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho));
}

Vector random_pure_vector(std::int64_t dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (std::int64_t i = 0; i < dim; ++i)
    v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

Vector extreme_superposition(const SpectralDecomposition &spec, int sign) {
  const int lo = 0;
  const int hi = spec.level_count() - 1;
  if (hi == lo)
    throw std::invalid_argument("need at least two levels");
  Vector psi = Vector::Zero(spec.dim());
  const double s = sign >= 0 ? 1.0 : -1.0;
  if (spec.has_basis()) {
    psi = (spec.basis().col(spec.offset(hi)) +
           s * spec.basis().col(spec.offset(lo))) /
          std::sqrt(2.0);
  } else {
    psi(spec.offset(hi)) = 1.0 / std::sqrt(2.0);
    psi(spec.offset(lo)) = s / std::sqrt(2.0);
  }
  return psi;
}

} // namespace lts
