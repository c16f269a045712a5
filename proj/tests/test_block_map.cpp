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

#include <memory>
#include <random>

#include "doctest.h"

#include "lts/block_map.hpp"

using namespace lts;

namespace {

std::shared_ptr<const SpectralDecomposition> diag_spec(
    std::initializer_list<double> energies) {
  return std::make_shared<const SpectralDecomposition>(
      from_diagonal(std::vector<double>(energies)));
}

} // namespace

TEST_CASE("exact map coefficients for a two-level system") {
  const auto spec = diag_spec({0.0, 1.5});
  const double lambda = 2.0, t0 = 0.7;
  const auto map = exact_map(spec, {t0, lambda, std::nullopt});
  const double gap = 1.5;
  const Complex expected = std::exp(Complex(0.0, t0 * gap)) *
                           std::exp(-gap * gap / (4.0 * lambda));
  CHECK(std::abs(map.coeff(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(map.coeff(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(map.coeff(0, 1) - expected) < 1e-15);
  CHECK(std::abs(map.coeff(1, 0) - std::conj(expected)) < 1e-15);
}

TEST_CASE("infinite lambda reduces to unitary conjugation") {
  const auto spec = diag_spec({-1.0, 0.5, 2.0});
  const double t = 1.3;
  const auto sharp = exact_map(
      spec, {t, std::numeric_limits<double>::infinity(), std::nullopt});
  const auto unitary = unitary_map(spec, t);
  CHECK((sharp.coeff - unitary.coeff).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("map preserves trace, hermiticity, positivity, unitality") {
  std::mt19937_64 rng(9);
  const auto spec = diag_spec({-2.0, -0.5, 0.1, 1.0, 3.0});
  const auto map = exact_map(spec, {2.0, 1.5, std::nullopt});
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_state(5, rng);
    // `apply` revalidates: Hermiticity, unit trace and positivity checked
    // inside the DensityMatrix constructor.
    const DensityMatrix out = apply(map, rho);
    CHECK(out.matrix().trace().real() == doctest::Approx(1.0));
  }
  // Unitality: identity is a fixed point.
  const Matrix id = Matrix::Identity(5, 5);
  CHECK((apply_matrix(map, id) - id).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("map conserves all energy moments") {
  std::mt19937_64 rng(21);
  const auto spec = diag_spec({-1.0, 0.0, 0.7, 2.2});
  const auto map = exact_map(spec, {1.1, 0.8, std::nullopt});
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(4, rng);
    const DensityMatrix out = apply(map, rho);
    const EnergyStats before = energy_stats(rho, *spec);
    const EnergyStats after = energy_stats(out, *spec);
    CHECK(after.mean == doctest::Approx(before.mean).epsilon(1e-10));
    CHECK(after.std_dev == doctest::Approx(before.std_dev).epsilon(1e-10));
  }
}

TEST_CASE("composition with a unitary shifts the instant exactly") {
  const auto spec = diag_spec({-1.2, 0.3, 0.9, 2.0});
  const double lambda = 1.7, t0 = 2.4, t_prime = 0.9;
  const auto shifted = compose(unitary_map(spec, t0 - t_prime),
                               exact_map(spec, {t_prime, lambda, std::nullopt}));
  const auto direct = exact_map(spec, {t0, lambda, std::nullopt});
  CHECK((shifted.coeff - direct.coeff).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qubit self-composition defect is a(1 - a)") {
  const auto spec = diag_spec({0.0, 1.0});
  const double lambda = 0.9, t = 0.6;
  const auto once = exact_map(spec, {t, lambda, std::nullopt});
  const auto twice = exact_map(spec, {2.0 * t, lambda, std::nullopt});
  const auto composed = compose(once, once);
  const double a = std::exp(-1.0 / (4.0 * lambda));
  const double defect =
      std::abs(twice.coeff(0, 1) - composed.coeff(0, 1));
  CHECK(defect == doctest::Approx(a * (1.0 - a)).epsilon(1e-12));
}

TEST_CASE("k-fold family approaches the Luders limit") {
  std::mt19937_64 rng(31);
  const auto spec = diag_spec({0.0, 1.0, 2.3, 4.1});
  const DensityMatrix rho = random_state(4, rng);
  const auto map = kfold_family_map(spec, {1.0, 1.0, std::nullopt}, 500);
  const DensityMatrix limit = luders_project(rho, *spec);
  const DensityMatrix out = apply(map, rho);
  CHECK((out.matrix() - limit.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kraus set is complete and reconstructs the action") {
  std::mt19937_64 rng(12);
  const auto spec = diag_spec({-0.6, 0.2, 1.4, 2.0, 3.3});
  const auto map = exact_map(spec, {0.8, 2.5, std::nullopt});
  const KrausSet kraus = kraus_decomposition(map);
  Matrix total = Matrix::Zero(5, 5);
  for (const auto &k : kraus.operators)
    total += k.adjoint() * k;
  CHECK((total - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(kraus.weights.minCoeff() >= 0.0);

  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_state(5, rng);
    Matrix rebuilt = Matrix::Zero(5, 5);
    for (const auto &k : kraus.operators)
      rebuilt += k * rho.matrix() * k.adjoint();
    CHECK((rebuilt - apply_matrix(map, rho.matrix())).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("kraus decomposition refuses a non-CP coefficient matrix") {
  const auto spec = diag_spec({0.0, 1.0});
  BlockCoefficientMap map = exact_map(spec, {0.0, 1.0, std::nullopt});
  map.coeff(0, 1) = 1.5; // |c| > 1 cannot be CP
  map.coeff(1, 0) = 1.5;
  CHECK_THROWS_WITH(static_cast<void>(kraus_decomposition(map)),
                    doctest::Contains("no Kraus form"));
}

TEST_CASE("identity defect vanishes exactly for block-diagonal states") {
  const auto spec = diag_spec({0.0, 2.0});
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  CHECK(identity_defect(spec, 1.0, DensityMatrix(diag)) == 0.0);

  Vector psi(2);
  psi << 1.0, 1.0;
  CHECK(identity_defect(spec, 1.0, from_pure(psi)) > 0.1);
}

TEST_CASE("initial-instant perturbation fades with pre-interaction width") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal;
  Matrix g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      g(r, c) = Complex(normal(rng), normal(rng));
  const auto pre = from_hermitian(0.5 * (g + g.adjoint().eval()));
  const DensityMatrix rho = random_state(4, rng);
  const auto strong = initial_instant_perturbation(pre, 1e8, rho);
  CHECK(strong.deviation < 1e-6);
  const auto weak = initial_instant_perturbation(pre, 0.1, rho);
  CHECK(weak.deviation > strong.deviation);
}

TEST_CASE("parameter window validation") {
  const auto spec = spin_ensemble(4, 1.0);
  const DensityMatrix rho = from_pure(extreme_superposition(spec, 1));
  const EnergyStats stats = energy_stats(rho, spec);

  CHECK_THROWS(LocalTimeParams{1.0, -1.0, std::nullopt}.validate(spec));
  // delta_t below the 1/sqrt(lambda) floor.
  CHECK_THROWS(LocalTimeParams{1.0, 4.0, 0.1}.validate(spec, stats));
  // delta_t above tau_min = pi/(2 * 2) for dH = <H> - E_g = 2.
  CHECK_THROWS(LocalTimeParams{1.0, 100.0, 1.0}.validate(spec, stats));
  // In-window value passes, possibly with soft warnings only.
  CHECK_NOTHROW(
      LocalTimeParams{1.0, 100.0, 0.5}.validate(spec, stats));
  // lambda at or below the squared energy scale only warns.
  const auto warnings =
      LocalTimeParams{1.0, 0.5, std::nullopt}.validate(spec, stats);
  CHECK(!warnings.empty());
}

TEST_CASE("rotated-basis application matches the dense projector oracle") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> normal;
  Matrix g(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      g(r, c) = Complex(normal(rng), normal(rng));
  const auto spec = std::make_shared<const SpectralDecomposition>(
      from_hermitian(0.5 * (g + g.adjoint().eval())));
  const auto map = exact_map(spec, {1.4, 2.2, std::nullopt});
  const DensityMatrix rho = random_state(5, rng);

  Matrix expected = Matrix::Zero(5, 5);
  for (int m = 0; m < spec->level_count(); ++m)
    for (int n = 0; n < spec->level_count(); ++n)
      expected += map.coeff(m, n) * spec->projector(m) * rho.matrix() *
                  spec->projector(n);
  CHECK((apply_matrix(map, rho.matrix()) - expected).cwiseAbs().maxCoeff() <
        1e-12);
}
