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

#include "lts/block_map.hpp"

#include <cmath>
#include <stdexcept>

namespace lts {

namespace {

Complex phase_factor(double t, double gap) {
  return std::exp(Complex(0.0, -t * gap));
}

double gaussian_factor(double gap, double lambda, double fold = 1.0) {
  if (std::isinf(lambda))
    return 1.0;
  return std::exp(-fold * gap * gap / (4.0 * lambda));
}

void check_same_spec(const BlockCoefficientMap &a,
                     const BlockCoefficientMap &b) {
  if (a.spec != b.spec) {
    // Distinct objects may still describe the same spectrum.
    if (!a.spec || !b.spec || a.spec->dim() != b.spec->dim() ||
        a.spec->level_count() != b.spec->level_count() ||
        (a.spec->energies() - b.spec->energies()).cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("maps are defined over different spectra");
  }
}

} // namespace

std::vector<std::string>
LocalTimeParams::validate(const SpectralDecomposition &spec,
                          const std::optional<EnergyStats> &stats) const {
  if (!(lambda > 0))
    throw std::invalid_argument("lambda must be positive");
  if (t0 < 0)
    throw std::invalid_argument("t0 must be nonnegative");
  std::vector<std::string> warnings;
  const double c = spec.energy_scale();
  if (!std::isinf(lambda) && lambda <= c * c)
    warnings.push_back("lambda <= C^2: outside the modeling bound lambda > C^2");
  if (delta_t) {
    if (!(*delta_t > 0))
      throw std::invalid_argument("delta_t must be positive");
    if (!std::isinf(lambda) && *delta_t <= 1.0 / std::sqrt(lambda))
      throw std::invalid_argument("delta_t must exceed lambda^(-1/2)");
    if (stats && stats->std_dev > 0 && stats->mean_above_ground > 0) {
      const double pi = 3.14159265358979323846;
      const double tau_min = std::max(pi / (2.0 * stats->std_dev),
                                      pi / (2.0 * stats->mean_above_ground));
      if (*delta_t >= tau_min)
        throw std::invalid_argument("delta_t must be below tau_min");
    }
  }
  return warnings;
}

BlockCoefficientMap
exact_map(std::shared_ptr<const SpectralDecomposition> spec,
          const LocalTimeParams &params) {
  auto warnings = params.validate(*spec);
  const int n = spec->level_count();
  Matrix c(n, n);
  for (int m = 0; m < n; ++m) {
    c(m, m) = 1.0;
    for (int k = m + 1; k < n; ++k) {
      const double gap = spec->energy(m) - spec->energy(k);
      c(m, k) = phase_factor(params.t0, gap) *
                gaussian_factor(gap, params.lambda);
      c(k, m) = std::conj(c(m, k));
    }
  }
  BlockCoefficientMap map{std::move(spec), std::move(c), params.t0,
                          std::move(warnings)};
  if (params.t0 == 0.0)
    map.notes.push_back("t0 = 0: outside the t0 in (0, inf) domain of the "
                        "scheme; kept to exhibit the identity defect");
  return map;
}

BlockCoefficientMap
unitary_map(std::shared_ptr<const SpectralDecomposition> spec, double t) {
  const int n = spec->level_count();
  Matrix c(n, n);
  for (int m = 0; m < n; ++m) {
    c(m, m) = 1.0;
    for (int k = m + 1; k < n; ++k) {
      c(m, k) = phase_factor(t, spec->energy(m) - spec->energy(k));
      c(k, m) = std::conj(c(m, k));
    }
  }
  return {std::move(spec), std::move(c), t, {}};
}

BlockCoefficientMap compose(const BlockCoefficientMap &outer,
                            const BlockCoefficientMap &inner) {
  check_same_spec(outer, inner);
  BlockCoefficientMap out{inner.spec, outer.coeff.cwiseProduct(inner.coeff),
                          std::numeric_limits<double>::quiet_NaN(),
                          {}};
  return out;
}

BlockCoefficientMap
kfold_family_map(std::shared_ptr<const SpectralDecomposition> spec,
                 const LocalTimeParams &params, int k) {
  if (k < 1)
    throw std::invalid_argument("k must be >= 1");
  auto warnings = params.validate(*spec);
  const int n = spec->level_count();
  Matrix c(n, n);
  for (int m = 0; m < n; ++m) {
    c(m, m) = 1.0;
    for (int j = m + 1; j < n; ++j) {
      const double gap = spec->energy(m) - spec->energy(j);
      c(m, j) = phase_factor(params.t0, gap) *
                gaussian_factor(gap, params.lambda, static_cast<double>(k));
      c(j, m) = std::conj(c(m, j));
    }
  }
  return {std::move(spec), std::move(c), params.t0, std::move(warnings)};
}

Matrix apply_matrix(const BlockCoefficientMap &map, const Matrix &x) {
  const auto &spec = *map.spec;
  if (x.rows() != spec.dim() || x.cols() != spec.dim())
    throw std::invalid_argument("dimension mismatch");
  Matrix a = spec.has_basis()
                 ? Matrix(spec.basis().adjoint() * x * spec.basis())
                 : x;
  for (int m = 0; m < spec.level_count(); ++m)
    for (int n = 0; n < spec.level_count(); ++n)
      a.block(spec.offset(m), spec.offset(n), spec.multiplicity(m),
              spec.multiplicity(n)) *= map.coeff(m, n);
  if (spec.has_basis())
    a = spec.basis() * a * spec.basis().adjoint();
  return a;
}

DensityMatrix apply(const BlockCoefficientMap &map, const DensityMatrix &rho) {
  Matrix out = apply_matrix(map, rho.matrix());
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(std::move(out));
}

KrausSet kraus_decomposition(const BlockCoefficientMap &map, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(map.coeff);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  if (solver.eigenvalues().minCoeff() < -psd_tol)
    throw std::runtime_error("no Kraus form at this instant");

  const auto &spec = *map.spec;
  const int n = spec.level_count();
  KrausSet set;
  set.weights = solver.eigenvalues().cwiseMax(0.0);
  for (int k = n - 1; k >= 0; --k) { // largest weight first
    const double gamma = set.weights(k);
    if (gamma <= psd_tol)
      continue;
    Vector v = solver.eigenvectors().col(k);
    // Deterministic output: largest-modulus component real positive.
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    Matrix op = Matrix::Zero(spec.dim(), spec.dim());
    for (int m = 0; m < n; ++m)
      op += v(m) * spec.projector(m);
    set.operators.push_back(std::sqrt(gamma) * op);
  }
  // Reorder weights to match emitted operators (descending, zeros dropped).
  RealVector w(set.operators.size());
  int idx = 0;
  for (int k = n - 1; k >= 0; --k)
    if (set.weights(k) > psd_tol)
      w(idx++) = set.weights(k);
  set.weights = std::move(w);
  return set;
}

double identity_defect(std::shared_ptr<const SpectralDecomposition> spec,
                       double lambda, const DensityMatrix &rho) {
  LocalTimeParams params{0.0, lambda, std::nullopt};
  const auto map = exact_map(std::move(spec), params);
  return (apply_matrix(map, rho.matrix()) - rho.matrix()).norm();
}

PerturbedInitialState
initial_instant_perturbation(const SpectralDecomposition &pre_spec,
                             double lambda_prime, const DensityMatrix &rho0) {
  if (!(lambda_prime > 0))
    throw std::invalid_argument("lambda' must be positive");
  auto spec = std::make_shared<SpectralDecomposition>(pre_spec);
  LocalTimeParams params{0.0, lambda_prime, std::nullopt};
  const auto map = exact_map(spec, params);
  DensityMatrix sigma = apply(map, rho0);
  const double dev = trace_distance(sigma, rho0);
  return {std::move(sigma), dev};
}

} // namespace lts
