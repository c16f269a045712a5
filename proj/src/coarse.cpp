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

#include "lts/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lts {

namespace {

double gauss(double gap, double lambda) {
  if (std::isinf(lambda))
    return 1.0;
  return std::exp(-gap * gap / (4.0 * lambda));
}

CoarseGraining finalize(std::shared_ptr<const SpectralDecomposition> spec,
                        std::vector<std::vector<int>> members) {
  CoarseGraining cg;
  cg.groups.reserve(members.size());
  cg.g = 0;
  for (auto &g : members) {
    if (g.empty())
      throw std::invalid_argument("empty coarse-graining group");
    CoarseGroup group;
    group.representative = g.front();
    group.companions.assign(g.begin() + 1, g.end());
    std::sort(group.companions.begin(), group.companions.end());
    group.g_m = spec->multiplicity(group.representative);
    group.g_upper = 0;
    double gap_sum = 0.0;
    for (int nu : group.companions) {
      group.g_upper += spec->multiplicity(nu);
      gap_sum += std::abs(spec->energy(nu) - spec->energy(group.representative));
    }
    group.delta = group.companions.empty()
                      ? 0.0
                      : gap_sum / static_cast<double>(group.companions.size());
    cg.g = std::max(cg.g, group.g_upper);
    cg.groups.push_back(std::move(group));
  }
  cg.spec = std::move(spec);
  return cg;
}

} // namespace

int CoarseGraining::group_of_level(int level) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].representative == level)
      return static_cast<int>(g);
    for (int nu : groups[g].companions)
      if (nu == level)
        return static_cast<int>(g);
  }
  throw std::invalid_argument("level not covered by the coarse graining");
}

CoarseGraining
build_coarse_graining(std::shared_ptr<const SpectralDecomposition> spec,
                      double lambda, double far_threshold,
                      double near_threshold) {
  if (!(lambda > 0))
    throw std::invalid_argument("lambda must be positive");
  if (!(0 < far_threshold && far_threshold < near_threshold &&
        near_threshold < 1))
    throw std::invalid_argument("need 0 < far_threshold < near_threshold < 1");

  const int n = spec->level_count();
  std::vector<std::vector<int>> members;
  for (int m = 0; m < n; ++m) {
    const bool joins =
        !members.empty() &&
        gauss(spec->energy(m) - spec->energy(members.back().front()),
              lambda) >= near_threshold;
    if (joins)
      members.back().push_back(m);
    else
      members.push_back({m});
  }

  // Cross-group factors are largest between adjacent boundary levels.
  for (std::size_t g = 1; g < members.size(); ++g) {
    const double gap = spec->energy(members[g].front()) -
                       spec->energy(members[g - 1].back());
    if (gauss(gap, lambda) > far_threshold)
      throw std::runtime_error("no admissible coarse-graining");
  }
  return finalize(std::move(spec), std::move(members));
}

CoarseGraining
coarse_graining_from_groups(std::shared_ptr<const SpectralDecomposition> spec,
                            const std::vector<std::vector<int>> &groups) {
  std::vector<bool> seen(spec->level_count(), false);
  for (const auto &g : groups)
    for (int m : g) {
      if (m < 0 || m >= spec->level_count())
        throw std::invalid_argument("level index out of range");
      if (seen[m])
        throw std::invalid_argument("level appears in two groups");
      seen[m] = true;
    }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("partition must cover all levels");
  return finalize(std::move(spec), groups);
}

BlockCoefficientMap approx_map(const CoarseGraining &cg, double t0,
                               bool companion_unit) {
  const int n = cg.spec->level_count();
  Matrix c = Matrix::Zero(n, n);
  c.diagonal().setOnes();
  for (const auto &group : cg.groups) {
    const Complex phase = std::exp(Complex(0.0, -t0 * group.delta));
    for (int nu : group.companions) {
      c(group.representative, nu) = phase;
      c(nu, group.representative) = std::conj(phase);
    }
    if (companion_unit)
      for (std::size_t a = 0; a < group.companions.size(); ++a)
        for (std::size_t b = a + 1; b < group.companions.size(); ++b) {
          c(group.companions[a], group.companions[b]) = 1.0;
          c(group.companions[b], group.companions[a]) = 1.0;
        }
  }
  return {cg.spec, std::move(c), t0, {}};
}

double check_divisibility(const CoarseGraining &cg, double t0,
                          double t_prime) {
  if (!(t_prime > 0) || t_prime > t0)
    throw std::invalid_argument("need 0 < t' <= t0");
  const auto total = approx_map(cg, t0);
  const auto composed =
      compose(approx_map(cg, t0 - t_prime), approx_map(cg, t_prime));
  return (total.coeff - composed.coeff).cwiseAbs().maxCoeff();
}

RealVector uniform_probe(const SpectralDecomposition &spec) {
  const std::int64_t d = spec.dim();
  return RealVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

CpScanReport cp_scan(const CoarseGraining &cg,
                     const std::vector<double> &time_grid,
                     const std::optional<RealVector> &probe, double psd_tol) {
  if (time_grid.empty())
    throw std::invalid_argument("empty time grid");
  const auto &spec = *cg.spec;

  std::vector<double> rep_mass(cg.groups.size(), 0.0);
  std::vector<double> comp_mass(cg.groups.size(), 0.0);
  std::vector<double> level_mass(spec.level_count(), 0.0);
  if (probe) {
    if (probe->size() != spec.dim())
      throw std::invalid_argument("probe dimension mismatch");
    if (probe->minCoeff() < 0)
      throw std::invalid_argument("probe entries must be nonnegative");
    if (std::abs(probe->squaredNorm() - 1.0) > 1e-9)
      throw std::invalid_argument("probe must satisfy sum p_i^2 = 1");
    for (int m = 0; m < spec.level_count(); ++m)
      level_mass[m] =
          probe->segment(spec.offset(m), spec.multiplicity(m)).sum();
    for (std::size_t g = 0; g < cg.groups.size(); ++g) {
      rep_mass[g] = level_mass[cg.groups[g].representative];
      for (int nu : cg.groups[g].companions)
        comp_mass[g] += level_mass[nu];
    }
  }

  CpScanReport report;
  report.times = time_grid;
  report.g = cg.g;
  int eig_viol = 0, crit_viol = 0;

  for (double t : time_grid) {
    // The partition makes the coefficient matrix block diagonal by groups;
    // eigenvalues come from the small per-group blocks.
    double min_eig = std::numeric_limits<double>::infinity();
    double min_eig_incl = std::numeric_limits<double>::infinity();
    for (const auto &group : cg.groups) {
      const int c = static_cast<int>(group.companions.size());
      if (c == 0) {
        min_eig = std::min(min_eig, 1.0);
        min_eig_incl = std::min(min_eig_incl, 1.0);
        continue;
      }
      // Exclusive convention: block I + a (e_0 1^T) + h.c. with |a| = 1 has
      // extreme eigenvalues 1 -+ sqrt(c).
      min_eig = std::min(min_eig, 1.0 - std::sqrt(static_cast<double>(c)));
      // Companion-unit convention: eigenvalues {0, 1 + c, 0...}, PSD.
      min_eig_incl = std::min(min_eig_incl, 0.0);
    }
    report.min_eigs.push_back(min_eig);
    report.min_eigs_incl.push_back(min_eig_incl);
    if (min_eig < -psd_tol)
      ++eig_viol;

    if (probe) {
      double first = 0.0;
      for (double lm : level_mass)
        first += lm * lm;
      double second = 0.0;
      for (std::size_t g = 0; g < cg.groups.size(); ++g)
        second += 2.0 * std::cos(cg.groups[g].delta * t) * rep_mass[g] *
                  comp_mass[g];
      const double crit =
          (first + second) / static_cast<double>(spec.dim());
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

} // namespace lts
