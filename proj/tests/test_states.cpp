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

#include <random>

#include "doctest.h"

#include "lts/states.hpp"

using namespace lts;

TEST_CASE("density matrix validation rejects bad inputs") {
  Matrix ok = Matrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityMatrix{ok});

  Matrix not_hermitian = ok;
  not_hermitian(0, 1) = Complex(0.3, 0.1);
  CHECK_THROWS(DensityMatrix{not_hermitian});

  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS(DensityMatrix{bad_trace});

  Matrix negative(2, 2);
  negative << 0.2, 0.5, 0.5, 0.8; // eigenvalue below zero
  CHECK_THROWS(DensityMatrix{negative});
}

TEST_CASE("from_pure normalizes") {
  Vector psi(2);
  psi << Complex(3.0, 0.0), Complex(0.0, 4.0);
  const DensityMatrix rho = from_pure(psi);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
  CHECK(rho.purity() == doctest::Approx(1.0));
}

TEST_CASE("energy stats of the extreme superposition") {
  const auto spec = spin_ensemble(4, 1.0);
  const DensityMatrix rho = from_pure(extreme_superposition(spec, 1));
  const EnergyStats stats = energy_stats(rho, spec);
  CHECK(stats.mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(stats.std_dev == doctest::Approx(2.0)); // E/2
  CHECK(stats.mean_above_ground == doctest::Approx(2.0));

  const RealVector pops = level_populations(rho, spec);
  CHECK(pops.sum() == doctest::Approx(1.0));
  CHECK(pops(0) == doctest::Approx(0.5));
  CHECK(pops(4) == doctest::Approx(0.5));
}

TEST_CASE("luders projection is idempotent and trace preserving") {
  std::mt19937_64 rng(3);
  const auto spec = from_diagonal({0.0, 1.0, 1.0, 2.5});
  const DensityMatrix rho = random_state(4, rng);
  const DensityMatrix pinned = luders_project(rho, spec);
  CHECK(pinned.matrix().trace().real() == doctest::Approx(1.0));
  const DensityMatrix twice = luders_project(pinned, spec);
  CHECK((twice.matrix() - pinned.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  // Level populations are untouched.
  const RealVector before = level_populations(rho, spec);
  const RealVector after = level_populations(pinned, spec);
  CHECK((before - after).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("luders projection works in a rotated eigenbasis") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  Matrix g(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      g(r, c) = Complex(normal(rng), normal(rng));
  const Matrix h = 0.5 * (g + g.adjoint().eval());
  const auto spec = from_hermitian(h);
  const DensityMatrix rho = random_state(5, rng);
  const DensityMatrix pinned = luders_project(rho, spec);

  // Oracle: explicit sum of projector sandwiches.
  Matrix expected = Matrix::Zero(5, 5);
  for (int m = 0; m < spec.level_count(); ++m)
    expected += spec.projector(m) * rho.matrix() * spec.projector(m);
  CHECK((pinned.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fidelity and trace distance agree for pure states") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector psi = random_pure_vector(6, rng);
    const Vector phi = random_pure_vector(6, rng);
    const double f = fidelity(from_pure(phi), psi);
    const double overlap = std::abs(psi.dot(phi));
    // fidelity(rho_phi, psi) = |<psi|phi>|
    CHECK(f == doctest::Approx(overlap).epsilon(1e-10));
    const double d = trace_distance(from_pure(psi), from_pure(phi));
    CHECK(d == doctest::Approx(std::sqrt(1.0 - f * f)).epsilon(1e-9));
  }
}

TEST_CASE("random states are reproducible and valid") {
  std::mt19937_64 a(42), b(42);
  const DensityMatrix ra = random_state(8, a);
  const DensityMatrix rb = random_state(8, b);
  CHECK((ra.matrix() - rb.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ra.matrix().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("extreme superposition splits between the edge levels") {
  const auto spec = oscillator_modes(3, 1.0, 5);
  const Vector psi = extreme_superposition(spec, -1);
  CHECK(psi.squaredNorm() == doctest::Approx(1.0));
  const RealVector pops = level_populations(from_pure(psi), spec);
  CHECK(pops(0) == doctest::Approx(0.5));
  CHECK(pops(spec.level_count() - 1) == doctest::Approx(0.5));
}
