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

#include "lts/markov.hpp"
#include "lts/opensys.hpp"

using namespace lts;

namespace {

// 2-block system x 3-block environment with generic couplings.
std::shared_ptr<PureDecoherenceInteraction> small_interaction() {
  RealMatrix e(2, 3);
  e << 0.0, 1.0, 2.0, 3.3, 5.1, 7.4;
  return std::make_shared<PureDecoherenceInteraction>(
      e, std::vector<std::int64_t>{1, 1}, std::vector<std::int64_t>{1, 1, 1});
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_env(const Matrix &joint, Eigen::Index d_sys,
                         Eigen::Index d_env) {
  Matrix out = Matrix::Zero(d_sys, d_sys);
  for (Eigen::Index a = 0; a < d_sys; ++a)
    for (Eigen::Index g = 0; g < d_sys; ++g)
      for (Eigen::Index b = 0; b < d_env; ++b)
        out(a, g) += joint(a * d_env + b, g * d_env + b);
  return out;
}

} // namespace

TEST_CASE("reduced map equals tracing out the closed-system map") {
  std::mt19937_64 rng(23);
  const auto inter = small_interaction();
  const double lambda = 2.7, t0 = 1.4;

  const DensityMatrix rho_s = random_state(2, rng);
  // Diagonal environment state (the reduced map only sees its occupations).
  Matrix env = Matrix::Zero(3, 3);
  env(0, 0) = 0.5;
  env(1, 1) = 0.3;
  env(2, 2) = 0.2;
  const DensityMatrix rho_env{env};

  // Closed-system oracle: the interaction Hamiltonian is diagonal with
  // entries E_ab over the product basis; evolve the product state and trace.
  std::vector<double> joint_energies;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      joint_energies.push_back(inter->e_grid()(a, b));
  const auto joint_spec = std::make_shared<const SpectralDecomposition>(
      from_diagonal(joint_energies));
  const Matrix joint0 = kron(rho_s.matrix(), env);
  const Matrix joint_t = apply_matrix(
      exact_map(joint_spec, {t0, lambda, std::nullopt}), joint0);
  const Matrix expected = partial_trace_env(joint_t, 2, 3);

  const auto reduced = reduced_exact_map(*inter, rho_env, lambda, t0);
  const Matrix got = apply_matrix(reduced, rho_s.matrix());
  CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coherence factors bound the reduced coefficients") {
  const auto inter = small_interaction();
  Matrix env = Matrix::Identity(3, 3) / 3.0;
  const DensityMatrix rho_env{env};
  for (double t0 : {0.0, 0.9, 4.2}) {
    const auto cf = coherence_factors(*inter, rho_env, 2.0, t0);
    CHECK(std::abs(cf.b(0, 1)) <= cf.zeta(0, 1) + 1e-14);
    // Weights over beta are a probability distribution.
    double sum = 0.0;
    for (const auto &w : cf.weights)
      sum += w(0, 1);
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("the reduced map is CP at every instant") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uni(0.1, 8.0);
  const auto inter = small_interaction();
  const DensityMatrix rho_env{Matrix::Identity(3, 3) / 3.0};
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = reduced_exact_map(*inter, rho_env, uni(rng), uni(rng));
    CHECK(is_cp(b).is_cp);
  }
}

TEST_CASE("k-fold reduced family reaches the steady state") {
  std::mt19937_64 rng(29);
  const auto inter = small_interaction();
  const DensityMatrix rho_env{Matrix::Identity(3, 3) / 3.0};
  const DensityMatrix rho_s = random_state(2, rng);
  const auto far = kfold_reduced(*inter, rho_env, 0.4, 1.0, 500);
  const DensityMatrix limit = steady_state(*inter, rho_s);
  CHECK((apply_matrix(far, rho_s.matrix()) - limit.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  // The steady state is a fixed point of the exact reduced map.
  const auto b = reduced_exact_map(*inter, rho_env, 0.4, 2.2);
  CHECK((apply_matrix(b, limit.matrix()) - limit.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-13);
}

TEST_CASE("commensurate spectra recur at the fundamental period") {
  // Integer gaps 1..8 make a Dirichlet-kernel coherence factor: the
  // partial revivals stay below half the initial value, so the first
  // detected recurrence belongs to the full revival lobe at t = 2 pi.
  const int n_env = 8;
  RealMatrix e(2, n_env);
  for (int b = 0; b < n_env; ++b) {
    e(0, b) = 0.0;
    e(1, b) = 1.0 + b;
  }
  std::vector<std::int64_t> env_mult(n_env, 1);
  const PureDecoherenceInteraction inter(e, {1, 1}, env_mult);
  const DensityMatrix rho_env{
      Matrix::Identity(n_env, n_env) / double(n_env)};
  const double period = 2.0 * M_PI;
  std::vector<double> grid;
  for (int i = 0; i <= 500; ++i)
    grid.push_back(period * 1.25 * i / 500.0);
  const auto profile =
      decoherence_profile(inter, rho_env, 40.0, grid, 0.3, 5);
  REQUIRE(profile.decoherence_time.has_value());
  REQUIRE(profile.recurrence_time.has_value());
  // Detection fires on the rising edge of the revival lobe, so the
  // reported time sits a little before the exact period.
  CHECK(*profile.recurrence_time <= period + 0.05);
  CHECK(*profile.recurrence_time >= period - 0.7);
  // The revival itself is exact: at t = 2 pi every phase returns.
  const auto b0 = reduced_exact_map(inter, rho_env, 40.0, 0.0);
  const auto bp = reduced_exact_map(inter, rho_env, 40.0, period);
  CHECK(std::abs(std::abs(bp.coeff(0, 1)) -
                 std::abs(b0.coeff(0, 1))) < 1e-12);
}

TEST_CASE("reduced coarse graining groups nearby system blocks") {
  // Blocks 0 and 1 are near across every beta; block 2 is far.
  RealMatrix e(3, 2);
  e << 0.0, 10.0, 0.02, 10.03, 7.0, 3.0;
  const auto inter = std::make_shared<PureDecoherenceInteraction>(
      e, std::vector<std::int64_t>{1, 1, 1}, std::vector<std::int64_t>{1, 1});
  const auto rcg = build_reduced_coarse_graining(inter, 0.1);
  REQUIRE(rcg.groups.size() == 2);
  CHECK(rcg.groups[0].representative == 0);
  REQUIRE(rcg.groups[0].companions.size() == 1);
  CHECK(rcg.groups[0].companions[0] == 1);
  CHECK(rcg.deltas(0, 0) == doctest::Approx(-0.02));
  CHECK(rcg.deltas(0, 1) == doctest::Approx(-0.03));

  // With lambda between the scales the gap-7 pairs are neither near nor
  // far, so no admissible grouping exists.
  CHECK_THROWS(static_cast<void>(build_reduced_coarse_graining(inter, 20.0)));
}

TEST_CASE("reduced cp scan matches the dense spectral oracle") {
  RealMatrix e(4, 3);
  e << 0.0, 5.0, 11.0,       //
      0.03, 5.05, 11.02,     //
      0.01, 5.01, 11.05,     //
      20.0, 30.0, 40.0;      // far block
  const auto inter = std::make_shared<PureDecoherenceInteraction>(
      e, std::vector<std::int64_t>{1, 1, 1, 1},
      std::vector<std::int64_t>{1, 1, 1});
  const auto rcg = build_reduced_coarse_graining(inter, 0.05);
  const DensityMatrix rho_env{Matrix::Identity(3, 3) / 3.0};
  std::vector<double> times;
  for (int i = 0; i <= 60; ++i)
    times.push_back(2.0 * i);
  const auto probe = uniform_probe(*inter->sys_structure());
  const auto scan = cp_scan_reduced(rcg, rho_env, times, probe);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto map = approx_reduced_map(rcg, rho_env, times[i]);
    CHECK(scan.min_eigs[i] ==
          doctest::Approx(is_cp(map).min_eigenvalue).epsilon(1e-9));
  }
  CHECK(scan.eig_violation_fraction > 0.0);
  CHECK(scan.criterion_violation_fraction <= scan.eig_violation_fraction);
}

TEST_CASE("dephasing rates are PSD-derived and vanish on the diagonal") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    RealMatrix g(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        g(r, c) = normal(rng);
    const RealMatrix gamma = g * g.transpose();
    std::vector<RealVector> a_values;
    for (int o = 0; o < 3; ++o) {
      RealVector a(4);
      for (int i = 0; i < 4; ++i)
        a(i) = normal(rng);
      a_values.push_back(a);
    }
    const RealMatrix rates = dephasing_rates(gamma, a_values);
    CHECK(rates.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(rates.minCoeff() >= 0.0);
    CHECK((rates - rates.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  // Indefinite gamma is rejected.
  RealMatrix bad = -RealMatrix::Identity(2, 2);
  CHECK_THROWS(static_cast<void>(
      dephasing_rates(bad, {RealVector::Ones(2), RealVector::Zero(2)})));
}

TEST_CASE("analytic dephasing matches an RK4 integration") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> normal;
  RealMatrix g(2, 2);
  g << 1.0, 0.3, 0.2, 0.8;
  const RealMatrix gamma = g * g.transpose();
  std::vector<RealVector> a_values;
  for (int o = 0; o < 2; ++o) {
    RealVector a(4);
    for (int i = 0; i < 4; ++i)
      a(i) = normal(rng);
    a_values.push_back(a);
  }
  const DensityMatrix rho0 = random_state(4, rng);

  // Generator: L[rho] = sum_ij gamma_ij (A_i rho A_j - (A_j A_i rho +
  // rho A_j A_i)/2) with A_i diagonal; integrate with classic RK4.
  std::vector<Matrix> a_ops;
  for (const auto &a : a_values)
    a_ops.push_back(a.cast<Complex>().asDiagonal());
  auto lindblad = [&](const Matrix &rho) {
    Matrix out = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Matrix aji = a_ops[j] * a_ops[i];
        out += gamma(i, j) * (a_ops[i] * rho * a_ops[j] -
                              0.5 * (aji * rho + rho * aji));
      }
    return out;
  };
  const double t_final = 0.8;
  const int steps = 4000;
  const double h = t_final / steps;
  Matrix rho = rho0.matrix();
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = lindblad(rho);
    const Matrix k2 = lindblad(rho + 0.5 * h * k1);
    const Matrix k3 = lindblad(rho + 0.5 * h * k2);
    const Matrix k4 = lindblad(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const DensityMatrix analytic =
      lindblad_dephasing(gamma, a_values, rho0, t_final);
  CHECK((analytic.matrix() - rho).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("lts and lindblad comparison produces matched trajectories") {
  const auto inter = small_interaction();
  const DensityMatrix rho_env{Matrix::Identity(3, 3) / 3.0};
  RealMatrix gamma(1, 1);
  gamma << 0.4;
  std::vector<RealVector> a_values = {RealVector(2)};
  a_values[0] << 1.0, -1.0;
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i)
    times.push_back(0.1 * i);
  const auto cmp = lts_vs_lindblad(*inter, rho_env, 2.0, gamma, a_values,
                                   times);
  REQUIRE(cmp.pairs.size() == 1);
  CHECK(cmp.lts_moduli[0].size() == times.size());
  CHECK(cmp.lindblad_envelope[0].front() == doctest::Approx(1.0));
  CHECK(cmp.lindblad_envelope[0].back() < 1.0);
}

TEST_CASE("degenerate interaction grids are flagged, not rejected") {
  RealMatrix e(2, 2);
  e << 1.0, 2.0, 1.0, 3.0;
  const PureDecoherenceInteraction inter(e, {1, 1}, {1, 1});
  CHECK(inter.degenerate());
}
