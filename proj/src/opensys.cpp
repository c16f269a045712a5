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

#include "lts/opensys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lts {

namespace {

double gauss(double gap, double lambda, double fold = 1.0) {
  if (std::isinf(lambda))
    return 1.0;
  return std::exp(-fold * gap * gap / (4.0 * lambda));
}

std::shared_ptr<const SpectralDecomposition>
make_block_structure(const std::vector<std::int64_t> &dims) {
  RealVector pseudo(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a)
    pseudo(a) = static_cast<double>(a);
  return std::make_shared<SpectralDecomposition>(pseudo, dims, 1.0);
}

} // namespace

PureDecoherenceInteraction::PureDecoherenceInteraction(
    RealMatrix e_grid, std::vector<std::int64_t> sys_block_dims,
    std::vector<std::int64_t> env_block_dims)
    : e_grid_(std::move(e_grid)), sys_dims_(std::move(sys_block_dims)),
      env_dims_(std::move(env_block_dims)) {
  if (e_grid_.rows() != static_cast<Eigen::Index>(sys_dims_.size()) ||
      e_grid_.cols() != static_cast<Eigen::Index>(env_dims_.size()))
    throw std::invalid_argument("E grid does not match block counts");
  if (sys_dims_.empty() || env_dims_.empty())
    throw std::invalid_argument("need at least one block per factor");
  d_sys_ = 0;
  for (auto g : sys_dims_) {
    if (g <= 0)
      throw std::invalid_argument("block dimensions must be positive");
    d_sys_ += g;
  }
  d_env_ = 0;
  for (auto g : env_dims_) {
    if (g <= 0)
      throw std::invalid_argument("block dimensions must be positive");
    d_env_ += g;
  }
  // Distinct E_ab keep the joint block structure nondegenerate; repeats
  // are recorded, not rejected, since the construction stays valid.
  degenerate_ = false;
  std::vector<double> flat(e_grid_.data(), e_grid_.data() + e_grid_.size());
  std::sort(flat.begin(), flat.end());
  for (std::size_t i = 1; i < flat.size(); ++i)
    if (flat[i] == flat[i - 1])
      degenerate_ = true;
  sys_structure_ = make_block_structure(sys_dims_);
}

RealVector PureDecoherenceInteraction::env_probabilities(
    const DensityMatrix &rho_env) const {
  if (rho_env.dim() != d_env_)
    throw std::invalid_argument("environment state dimension mismatch");
  RealVector q(env_blocks());
  std::int64_t off = 0;
  for (int b = 0; b < env_blocks(); ++b) {
    q(b) = rho_env.matrix()
               .diagonal()
               .segment(off, env_dims_[b])
               .real()
               .sum();
    off += env_dims_[b];
  }
  return q;
}

namespace {

BlockCoefficientMap reduced_map_impl(const PureDecoherenceInteraction &inter,
                                     const RealVector &q, double lambda,
                                     double t0, double fold) {
  if (!(lambda > 0))
    throw std::invalid_argument("lambda must be positive");
  const int na = inter.sys_blocks();
  const int nb = inter.env_blocks();
  Matrix c(na, na);
  for (int a = 0; a < na; ++a) {
    c(a, a) = 1.0;
    for (int g = a + 1; g < na; ++g) {
      Complex sum = 0.0;
      for (int b = 0; b < nb; ++b) {
        const double gap = inter.e_grid()(a, b) - inter.e_grid()(g, b);
        sum += q(b) * gauss(gap, lambda, fold) *
               std::exp(Complex(0.0, -t0 * gap));
      }
      c(a, g) = sum;
      c(g, a) = std::conj(sum);
    }
  }
  return {inter.sys_structure(), std::move(c), t0, {}};
}

} // namespace

BlockCoefficientMap reduced_exact_map(const PureDecoherenceInteraction &inter,
                                      const DensityMatrix &rho_env,
                                      double lambda, double t0) {
  return reduced_map_impl(inter, inter.env_probabilities(rho_env), lambda, t0,
                          1.0);
}

BlockCoefficientMap kfold_reduced(const PureDecoherenceInteraction &inter,
                                  const DensityMatrix &rho_env, double lambda,
                                  double t0, int k) {
  if (k < 1)
    throw std::invalid_argument("k must be >= 1");
  return reduced_map_impl(inter, inter.env_probabilities(rho_env), lambda, t0,
                          static_cast<double>(k));
}

CoherenceFactors coherence_factors(const PureDecoherenceInteraction &inter,
                                   const DensityMatrix &rho_env,
                                   double lambda, double t0) {
  const RealVector q = inter.env_probabilities(rho_env);
  const int na = inter.sys_blocks();
  const int nb = inter.env_blocks();
  CoherenceFactors out;
  out.b = reduced_map_impl(inter, q, lambda, t0, 1.0).coeff;
  out.zeta = RealMatrix::Ones(na, na);
  out.weights.assign(nb, RealMatrix::Zero(na, na));
  for (int a = 0; a < na; ++a)
    for (int g = 0; g < na; ++g) {
      if (a == g)
        continue;
      double zeta = 0.0;
      for (int b = 0; b < nb; ++b)
        zeta += q(b) * gauss(inter.e_grid()(a, b) - inter.e_grid()(g, b),
                             lambda);
      out.zeta(a, g) = zeta;
      for (int b = 0; b < nb; ++b)
        out.weights[b](a, g) =
            zeta > 0 ? q(b) *
                           gauss(inter.e_grid()(a, b) - inter.e_grid()(g, b),
                                 lambda) /
                           zeta
                     : 0.0;
    }
  return out;
}

DensityMatrix steady_state(const PureDecoherenceInteraction &inter,
                           const DensityMatrix &rho_sys) {
  return luders_project(rho_sys, *inter.sys_structure());
}

DecoherenceProfile decoherence_profile(const PureDecoherenceInteraction &inter,
                                       const DensityMatrix &rho_env,
                                       double lambda,
                                       const std::vector<double> &time_grid,
                                       double epsilon_dec, int persistence) {
  if (time_grid.empty())
    throw std::invalid_argument("empty time grid");
  const RealVector q = inter.env_probabilities(rho_env);
  DecoherenceProfile profile;
  profile.times = time_grid;
  for (double t : time_grid) {
    const Matrix b = reduced_map_impl(inter, q, lambda, t, 1.0).coeff;
    double mx = 0.0;
    for (int a = 0; a < b.rows(); ++a)
      for (int g = 0; g < b.cols(); ++g)
        if (a != g)
          mx = std::max(mx, std::abs(b(a, g)));
    profile.max_moduli.push_back(mx);
  }

  const double initial = profile.max_moduli.front();
  const std::size_t n = profile.max_moduli.size();
  std::size_t dec_idx = n;
  for (std::size_t i = 0; i + persistence <= n && dec_idx == n; ++i) {
    bool sustained = true;
    for (std::size_t j = i; j < i + persistence; ++j)
      if (profile.max_moduli[j] >= epsilon_dec) {
        sustained = false;
        break;
      }
    if (sustained)
      dec_idx = i;
  }
  if (dec_idx < n) {
    profile.decoherence_time = time_grid[dec_idx];
    for (std::size_t i = dec_idx + 1; i < n; ++i)
      if (profile.max_moduli[i] > 0.5 * initial) {
        profile.recurrence_time = time_grid[i];
        break;
      }
  }
  return profile;
}

ReducedCoarseGraining build_reduced_coarse_graining(
    std::shared_ptr<const PureDecoherenceInteraction> inter, double lambda,
    double far_threshold, double near_threshold) {
  if (!(lambda > 0))
    throw std::invalid_argument("lambda must be positive");
  if (!(0 < far_threshold && far_threshold < near_threshold &&
        near_threshold < 1))
    throw std::invalid_argument("need 0 < far_threshold < near_threshold < 1");
  const int na = inter->sys_blocks();
  const int nb = inter->env_blocks();

  auto min_factor = [&](int a, int g) {
    double f = 1.0;
    for (int b = 0; b < nb; ++b)
      f = std::min(f, gauss(inter->e_grid()(a, b) - inter->e_grid()(g, b),
                            lambda));
    return f;
  };
  auto max_factor = [&](int a, int g) {
    double f = 0.0;
    for (int b = 0; b < nb; ++b)
      f = std::max(f, gauss(inter->e_grid()(a, b) - inter->e_grid()(g, b),
                            lambda));
    return f;
  };

  // Greedy in index order: alpha joins the current group when it is near
  // every current member.
  std::vector<std::vector<int>> members;
  for (int a = 0; a < na; ++a) {
    bool joins = !members.empty();
    if (joins)
      for (int m : members.back())
        if (min_factor(m, a) < near_threshold) {
          joins = false;
          break;
        }
    if (joins)
      members.back().push_back(a);
    else
      members.push_back({a});
  }
  for (std::size_t g1 = 0; g1 < members.size(); ++g1)
    for (std::size_t g2 = g1 + 1; g2 < members.size(); ++g2)
      for (int a : members[g1])
        for (int g : members[g2])
          if (max_factor(a, g) > far_threshold)
            throw std::runtime_error("no admissible coarse-graining");

  ReducedCoarseGraining rcg;
  rcg.deltas = RealMatrix::Zero(members.size(), nb);
  rcg.g_prime = 0;
  for (std::size_t gi = 0; gi < members.size(); ++gi) {
    CoarseGroup group;
    group.representative = members[gi].front();
    group.companions.assign(members[gi].begin() + 1, members[gi].end());
    group.g_m = inter->sys_block_dim(group.representative);
    group.g_upper = 0;
    for (int nu : group.companions)
      group.g_upper += inter->sys_block_dim(nu);
    for (int b = 0; b < nb; ++b) {
      double sum = 0.0;
      for (int nu : group.companions)
        sum += inter->e_grid()(group.representative, b) -
               inter->e_grid()(nu, b);
      rcg.deltas(gi, b) = group.companions.empty()
                              ? 0.0
                              : sum / static_cast<double>(
                                          group.companions.size());
    }
    group.delta = rcg.deltas.row(gi).cwiseAbs().mean();
    rcg.g_prime = std::max(rcg.g_prime, group.g_upper);
    rcg.groups.push_back(std::move(group));
  }
  rcg.inter = std::move(inter);
  return rcg;
}

BlockCoefficientMap approx_reduced_map(const ReducedCoarseGraining &rcg,
                                       const DensityMatrix &rho_env,
                                       double t0) {
  const auto &inter = *rcg.inter;
  const RealVector q = inter.env_probabilities(rho_env);
  const int na = inter.sys_blocks();
  Matrix c = Matrix::Zero(na, na);
  c.diagonal().setOnes();
  for (std::size_t gi = 0; gi < rcg.groups.size(); ++gi) {
    const auto &group = rcg.groups[gi];
    Complex coeff = 0.0;
    for (int b = 0; b < inter.env_blocks(); ++b)
      coeff += q(b) * std::exp(Complex(0.0, -t0 * rcg.deltas(gi, b)));
    for (int nu : group.companions) {
      c(group.representative, nu) = coeff;
      c(nu, group.representative) = std::conj(coeff);
    }
  }
  return {inter.sys_structure(), std::move(c), t0, {}};
}

CpScanReport cp_scan_reduced(const ReducedCoarseGraining &rcg,
                             const DensityMatrix &rho_env,
                             const std::vector<double> &time_grid,
                             const std::optional<RealVector> &probe,
                             double psd_tol) {
  if (time_grid.empty())
    throw std::invalid_argument("empty time grid");
  const auto &inter = *rcg.inter;
  const RealVector q = inter.env_probabilities(rho_env);
  const auto spec = inter.sys_structure();

  std::vector<double> level_mass(spec->level_count(), 0.0);
  std::vector<double> rep_mass(rcg.groups.size(), 0.0);
  std::vector<double> comp_mass(rcg.groups.size(), 0.0);
  if (probe) {
    if (probe->size() != spec->dim())
      throw std::invalid_argument("probe dimension mismatch");
    if (probe->minCoeff() < 0 ||
        std::abs(probe->squaredNorm() - 1.0) > 1e-9)
      throw std::invalid_argument("probe must be nonnegative with sum p^2 = 1");
    for (int a = 0; a < spec->level_count(); ++a)
      level_mass[a] =
          probe->segment(spec->offset(a), spec->multiplicity(a)).sum();
    for (std::size_t g = 0; g < rcg.groups.size(); ++g) {
      rep_mass[g] = level_mass[rcg.groups[g].representative];
      for (int nu : rcg.groups[g].companions)
        comp_mass[g] += level_mass[nu];
    }
  }

  CpScanReport report;
  report.times = time_grid;
  report.g = rcg.g_prime;
  int eig_viol = 0, crit_viol = 0;

  for (double t : time_grid) {
    double min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t gi = 0; gi < rcg.groups.size(); ++gi) {
      const auto &group = rcg.groups[gi];
      const int c = static_cast<int>(group.companions.size());
      if (c == 0) {
        min_eig = std::min(min_eig, 1.0);
        continue;
      }
      Complex coeff = 0.0;
      for (int b = 0; b < inter.env_blocks(); ++b)
        coeff += q(b) * std::exp(Complex(0.0, -t * rcg.deltas(gi, b)));
      // Block I + coeff (e_0 1^T) + h.c.: extremes 1 -+ sqrt(c) |coeff|.
      min_eig = std::min(min_eig,
                         1.0 - std::sqrt(static_cast<double>(c)) *
                                   std::abs(coeff));
    }
    report.min_eigs.push_back(min_eig);
    if (min_eig < -psd_tol)
      ++eig_viol;

    if (probe) {
      double first = 0.0;
      for (double lm : level_mass)
        first += lm * lm;
      double eps = -std::numeric_limits<double>::infinity();
      for (std::size_t gi = 0; gi < rcg.groups.size(); ++gi) {
        double e = 0.0;
        for (int b = 0; b < inter.env_blocks(); ++b)
          e += 2.0 * q(b) * std::cos(rcg.deltas(gi, b) * t);
        eps = std::max(eps, e);
      }
      double chi_sum = 0.0;
      for (std::size_t g = 0; g < rcg.groups.size(); ++g)
        chi_sum += rep_mass[g] * comp_mass[g];
      const double crit =
          (first + eps * chi_sum) / static_cast<double>(spec->dim());
      report.criteria.push_back(crit);
      if (crit < -psd_tol)
        ++crit_viol;
    }
  }
  const double n = static_cast<double>(time_grid.size());
  report.eig_violation_fraction = eig_viol / n;
  if (probe)
    report.criterion_violation_fraction = crit_viol / n;
  return report;
}

RealMatrix dephasing_rates(const RealMatrix &gamma,
                           const std::vector<RealVector> &a_values,
                           double psd_tol) {
  const int n_ops = static_cast<int>(a_values.size());
  if (gamma.rows() != n_ops || gamma.cols() != n_ops)
    throw std::invalid_argument("gamma must be n_ops x n_ops");
  if (n_ops == 0)
    throw std::invalid_argument("need at least one operator");
  const Eigen::Index d = a_values.front().size();
  for (const auto &a : a_values)
    if (a.size() != d)
      throw std::invalid_argument("a-value lists must share a length");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > psd_tol)
    throw std::invalid_argument("gamma must be symmetric");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gamma,
                                                   Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("gamma must be positive semidefinite");

  RealMatrix rates = RealMatrix::Zero(d, d);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = m + 1; n < d; ++n) {
      RealVector v(n_ops);
      for (int o = 0; o < n_ops; ++o)
        v(o) = a_values[o](m) - a_values[o](n);
      const double r = v.dot(gamma * v);
      rates(m, n) = rates(n, m) = std::max(0.0, r);
    }
  return rates;
}

DensityMatrix lindblad_dephasing(const RealMatrix &gamma,
                                 const std::vector<RealVector> &a_values,
                                 const DensityMatrix &rho0, double t) {
  const RealMatrix rates = dephasing_rates(gamma, a_values);
  if (rates.rows() != rho0.dim())
    throw std::invalid_argument("state dimension mismatch");
  Matrix out = rho0.matrix();
  for (Eigen::Index m = 0; m < out.rows(); ++m)
    for (Eigen::Index n = 0; n < out.cols(); ++n)
      out(m, n) *= std::exp(-0.5 * rates(m, n) * t);
  return DensityMatrix(std::move(out));
}

LtsLindbladComparison lts_vs_lindblad(const PureDecoherenceInteraction &inter,
                                      const DensityMatrix &rho_env,
                                      double lambda, const RealMatrix &gamma,
                                      const std::vector<RealVector> &a_values,
                                      const std::vector<double> &time_grid) {
  const int na = inter.sys_blocks();
  const RealMatrix rates = dephasing_rates(gamma, a_values);
  if (rates.rows() != na)
    throw std::invalid_argument("a-values must have one entry per system block");
  const RealVector q = inter.env_probabilities(rho_env);

  LtsLindbladComparison out;
  out.times = time_grid;
  for (int m = 0; m < na; ++m)
    for (int n = m + 1; n < na; ++n)
      out.pairs.emplace_back(m, n);
  out.lts_moduli.assign(out.pairs.size(), {});
  out.lindblad_envelope.assign(out.pairs.size(), {});
  out.lts_crossing_time.assign(out.pairs.size(), std::nullopt);

  const double inv_e = std::exp(-1.0);
  for (double t : time_grid) {
    const Matrix b = reduced_exact_map(inter, rho_env, lambda, t).coeff;
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
      const auto [m, n] = out.pairs[p];
      const double mod = std::abs(b(m, n));
      out.lts_moduli[p].push_back(mod);
      out.lindblad_envelope[p].push_back(std::exp(-0.5 * rates(m, n) * t));
      if (!out.lts_crossing_time[p] && mod < inv_e)
        out.lts_crossing_time[p] = t;
    }
  }
  return out;
}

} // namespace lts
