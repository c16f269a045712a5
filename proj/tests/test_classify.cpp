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

#include "lts/classify.hpp"
#include "lts/coarse.hpp"
#include "lts/markov.hpp"

using namespace lts;

namespace {

// Diagonal state on the spin ensemble with <H> = 0 and a chosen width:
// weight w on the two extreme levels, the rest on the zero level.
DensityMatrix symmetric_spin_state(const SpectralDecomposition &spec,
                                   double w) {
  Matrix rho = Matrix::Zero(spec.dim(), spec.dim());
  const int top = spec.level_count() - 1;
  const int mid = top / 2;
  rho(spec.offset(0), spec.offset(0)) = w;
  rho(spec.offset(top), spec.offset(top)) = w;
  rho(spec.offset(mid), spec.offset(mid)) = 1.0 - 2.0 * w;
  return DensityMatrix(std::move(rho));
}

} // namespace

TEST_CASE("moderate-width symmetric states allow coarse graining") {
  const auto spec = spin_ensemble(6, 1.0); // E = 6, extremes at +-3
  // Var = 18 w = (E/3)^2 = 4  =>  w = 2/9.
  const DomainReport r =
      classify_state(spec, symmetric_spin_state(spec, 2.0 / 9.0));
  CHECK(r.d_param == doctest::Approx(3.0));
  CHECK(r.r_param == doctest::Approx(2.0));
  REQUIRE(r.k_feasible.has_value());
  CHECK(r.k_feasible->first == doctest::Approx(1.0));
  CHECK(r.k_feasible->second == doctest::Approx(3.0 / 2.55).epsilon(1e-6));
  CHECK(r.domain == Domain::coarse_markovian);
  CHECK(r.x > 0.0);
  CHECK(r.delta_E == doctest::Approx(r.lambda > 0
                                         ? 6.0 / (r.x * r.k_chosen)
                                         : 0.0));
}

TEST_CASE("wide symmetric states leave no admissible k") {
  const auto spec = spin_ensemble(6, 1.0);
  // Var = 18 w = (0.4 E)^2 = 5.76  =>  w = 0.32.
  const DomainReport r =
      classify_state(spec, symmetric_spin_state(spec, 0.32));
  CHECK(r.d_param == doctest::Approx(2.5));
  CHECK(!r.k_feasible.has_value());
  CHECK(r.domain == Domain::non_markovian);
}

TEST_CASE("extreme superpositions are unitary-like") {
  const auto spec = spin_ensemble(6, 1.0);
  const DensityMatrix rho = from_pure(extreme_superposition(spec, 1));
  const DomainReport r = classify_state(spec, rho);
  CHECK(r.d_param == doctest::Approx(2.0));
  CHECK(r.r_param == doctest::Approx(2.0));
  CHECK(!r.k_feasible.has_value());
  CHECK(r.domain == Domain::unitary_like);
  REQUIRE(r.fidelity_floor.has_value());
  CHECK(*r.fidelity_floor == doctest::Approx(0.7437).epsilon(2e-3));
}

TEST_CASE("stationary states short-circuit to a trivial report") {
  const auto spec = spin_ensemble(4, 1.0);
  Matrix rho = Matrix::Zero(16, 16);
  rho(0, 0) = 1.0; // pure ground level
  const DomainReport r = classify_state(spec, DensityMatrix(std::move(rho)));
  CHECK(r.domain == Domain::coarse_markovian);
  CHECK(!r.notes.empty());
}

TEST_CASE("classification is scale invariant") {
  const auto spec = spin_ensemble(6, 1.0);
  const auto scaled = spin_ensemble(6, 137.0);
  const DensityMatrix rho = symmetric_spin_state(spec, 2.0 / 9.0);
  const DensityMatrix rho_scaled = symmetric_spin_state(scaled, 2.0 / 9.0);
  ClassifyOptions base, big;
  base.lambda_policy = LambdaPolicy::explicit_value(1.3);
  big.lambda_policy = LambdaPolicy::explicit_value(1.3 * 137.0 * 137.0);
  const DomainReport a = classify_state(spec, rho, base);
  const DomainReport b = classify_state(scaled, rho_scaled, big);
  CHECK(a.d_param == doctest::Approx(b.d_param));
  CHECK(a.r_param == doctest::Approx(b.r_param));
  CHECK(a.k_feasible->second == doctest::Approx(b.k_feasible->second));
  CHECK(a.domain == b.domain);
  CHECK(a.x == doctest::Approx(b.x));
}

TEST_CASE("coarse-markovian states admit a markovian approximate family") {
  const auto spec = std::make_shared<const SpectralDecomposition>(
      spin_ensemble(6, 1.0));
  const DensityMatrix rho = symmetric_spin_state(*spec, 2.0 / 9.0);
  const DomainReport r = classify_state(*spec, rho);
  REQUIRE(r.domain == Domain::coarse_markovian);

  // The admissible k induces merge intervals [E_m, E_m + E/k]; group the
  // levels accordingly and check the family is divisible and judged
  // markovian on a late-time grid.
  const double window = spec->spectral_width() / r.k_chosen;
  std::vector<std::vector<int>> groups;
  for (int m = 0; m < spec->level_count(); ++m) {
    if (!groups.empty() &&
        spec->energy(m) <=
            spec->energy(groups.back().front()) + window)
      groups.back().push_back(m);
    else
      groups.push_back({m});
  }
  const CoarseGraining cg = coarse_graining_from_groups(spec, groups);
  std::vector<double> times;
  std::vector<BlockCoefficientMap> family;
  for (int i = 1; i <= 8; ++i) {
    times.push_back(10.0 * i);
    family.push_back(approx_map(cg, times.back(), true));
  }
  const auto verdict = markovianity_verdict(times, family);
  CHECK(verdict.verdict == Verdict::markovian);
}

TEST_CASE("fidelity floor formula, limits, and time independence") {
  const auto spec = spin_ensemble(6, 1.0);
  const Vector psi = extreme_superposition(spec, 1);
  const double width = spec.spectral_width();

  // Large lambda: no dephasing. Small lambda: sqrt(1/2).
  CHECK(fidelity_floor(spec, psi, 1e12) == doctest::Approx(1.0));
  CHECK(fidelity_floor(spec, psi, 1e-6) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

  // Monotone in lambda.
  double prev = 0.0;
  for (double lam : {0.5, 1.0, 2.0, 8.0, 32.0}) {
    const double f = fidelity_floor(spec, psi, lam);
    CHECK(f > prev);
    prev = f;
  }

  // The floor is attained at every instant: evolve the state, evolve the
  // reference, and compare the numeric fidelity with the analytic value.
  const double lambda = 1.1 * (width / M_PI) * (width / M_PI);
  const double analytic = fidelity_floor(spec, psi, lambda);
  const auto shared =
      std::make_shared<const SpectralDecomposition>(spec);
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> uni(0.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t0 = uni(rng);
    const DensityMatrix sigma =
        apply(exact_map(shared, {t0, lambda, std::nullopt}), from_pure(psi));
    Vector psi_t(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      psi_t(i) = psi(i) * std::exp(Complex(
                              0.0, -spec.energy(spec.level_of_index(i)) * t0));
    CHECK(fidelity(sigma, psi_t) == doctest::Approx(analytic).epsilon(1e-10));
  }

  // Support restrictions are enforced.
  Vector three = Vector::Zero(spec.dim());
  three(spec.offset(0)) = three(spec.offset(2)) = three(spec.offset(4)) =
      1.0 / std::sqrt(3.0);
  CHECK_THROWS(static_cast<void>(fidelity_floor(spec, three, 1.0)));
}

TEST_CASE("near factors reproduce both exponent conventions") {
  // Spin model: k = 1.71, sqrt(lambda) = 0.7 E / pi, E_m = E_g = -E/2.
  const auto spec = spin_ensemble(6, 1.0);
  const double width = spec.spectral_width();
  const double lambda = std::pow(0.7 * width / M_PI, 2);
  const double k = 1.71, r = 1.0, s = 9.0;
  const double x = (r * s + 1.0) / (1.0 - k * spec.energy(0) / width);
  const NearFactor nf = near_factor(spec, k, x, r, s, 0, lambda);
  CHECK(nf.convention_a == doctest::Approx(0.9424).epsilon(2e-3));
  CHECK(nf.convention_b == doctest::Approx(0.79).epsilon(0.02));

  // Nonnegative spectrum with E_m = 0: x = rs + 1 is the smallest value.
  const auto osc = from_diagonal({0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const double x0 = r * s + 1.0;
  const double lambda_osc = std::pow(0.7 * osc.spectral_width() / M_PI, 2);
  const NearFactor nf0 = near_factor(osc, k, x0, r, s, 0, lambda_osc);
  CHECK(nf0.convention_b == doctest::Approx(0.933).epsilon(0.01));
  CHECK(nf0.convention_a == doctest::Approx(0.983).epsilon(2e-3));

  // Inconsistent bookkeeping tuples are rejected.
  CHECK_THROWS_WITH(
      static_cast<void>(near_factor(spec, k, x * 1.5, r, s, 0, lambda)),
      doctest::Contains("inconsistent"));
}

TEST_CASE("explicit lambda policy is honored") {
  const auto spec = spin_ensemble(6, 1.0);
  const DensityMatrix rho = from_pure(extreme_superposition(spec, 1));
  ClassifyOptions options;
  options.lambda_policy = LambdaPolicy::explicit_value(7.5);
  CHECK(classify_state(spec, rho, options).lambda == doctest::Approx(7.5));
  options.lambda_policy.explicit_lambda = -1.0;
  CHECK_THROWS(static_cast<void>(classify_state(spec, rho, options)));
}
