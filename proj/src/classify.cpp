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

#include "lts/classify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lts {

namespace {

constexpr double kKDenominator = 2.55;
constexpr double kResolvableRatio = 4.0;
const double kNan = std::numeric_limits<double>::quiet_NaN();

double minimal_lambda(const EnergyStats &stats, double multiplier) {
  const double base = std::min(stats.std_dev, stats.mean_above_ground);
  const double root = 2.0 * base / M_PI;
  return multiplier * root * root;
}

} // namespace

std::string to_string(Domain domain) {
  switch (domain) {
  case Domain::coarse_markovian:
    return "coarse_markovian";
  case Domain::unitary_like:
    return "unitary_like";
  case Domain::non_markovian:
    return "non_markovian";
  }
  return "unknown";
}

DomainReport classify_state(const SpectralDecomposition &spec,
                            const DensityMatrix &rho,
                            const ClassifyOptions &options) {
  DomainReport report;
  report.r_small = options.r_small;
  report.s = options.s;

  const EnergyStats stats = energy_stats(rho, spec);
  const double width = spec.spectral_width();

  if (options.lambda_policy.explicit_lambda) {
    report.lambda = *options.lambda_policy.explicit_lambda;
    if (!(report.lambda > 0))
      throw std::invalid_argument("lambda must be positive");
  } else {
    report.lambda =
        minimal_lambda(stats, options.lambda_policy.minimal_multiplier);
  }

  // Stationary states: no coherences can build up, nothing to decide.
  if (stats.std_dev <= 1e-12 * std::max(1.0, width)) {
    report.d_param = std::numeric_limits<double>::infinity();
    report.r_param =
        stats.mean_above_ground > 0
            ? width / stats.mean_above_ground
            : std::numeric_limits<double>::infinity();
    report.k_chosen = kNan;
    report.delta_E = kNan;
    report.x = kNan;
    report.domain = Domain::coarse_markovian;
    report.notes.push_back("zero energy variance: state is stationary");
    return report;
  }

  report.d_param = width / stats.std_dev;
  report.r_param = stats.mean_above_ground > 0
                       ? width / stats.mean_above_ground
                       : std::numeric_limits<double>::infinity();

  const RealVector pops = level_populations(rho, spec);
  std::vector<int> populated;
  for (int m = 0; m < spec.level_count(); ++m)
    if (pops(m) > options.pop_tol)
      populated.push_back(m);

  // Admissible coarsening exponents: 1 < k < max{d, r}/2.55, sharpened by
  // k < E/E_m for every populated level with positive energy.
  double k_upper = std::max(report.d_param, report.r_param) / kKDenominator;
  for (int m : populated)
    if (spec.energy(m) > 0)
      k_upper = std::min(k_upper, width / spec.energy(m));
  if (k_upper > 1.0)
    report.k_feasible = std::make_pair(1.0, k_upper);

  // Gap-resolvability check over populated level pairs: the scaled gap must
  // exceed 4 wherever two levels are not merged by the coarsening. With a
  // feasible k, pairs within E/k of each other count as merged.
  {
    const double scale =
        (2.0 / M_PI) * std::min(stats.std_dev, stats.mean_above_ground);
    const double merge_window =
        report.k_feasible ? width / report.k_feasible->second : 0.0;
    report.pairwise_resolvable = true;
    for (std::size_t i = 0; i < populated.size() && report.pairwise_resolvable;
         ++i)
      for (std::size_t j = i + 1; j < populated.size(); ++j) {
        const double gap =
            spec.energy(populated[j]) - spec.energy(populated[i]);
        if (gap <= merge_window)
          continue;
        if (!(scale > 0) || gap / scale <= kResolvableRatio) {
          report.pairwise_resolvable = false;
          break;
        }
      }
  }

  if (report.k_feasible) {
    report.k_chosen = 0.5 * (report.k_feasible->first +
                             report.k_feasible->second);
    // x is smallest (and the error delta_E largest) at the lowest populated
    // energy; a populated level with k E_m >= E would make x nonpositive,
    // but the k < E/E_m bound above already excludes that.
    double x_min = std::numeric_limits<double>::infinity();
    for (int m : populated) {
      const double denom = 1.0 - report.k_chosen * spec.energy(m) / width;
      if (denom <= 0)
        continue;
      x_min = std::min(x_min,
                       (options.r_small * options.s + 1.0) / denom);
    }
    report.x = x_min;
    report.delta_E = width / (report.x * report.k_chosen);
    report.domain = Domain::coarse_markovian;
    if (!report.pairwise_resolvable)
      report.notes.push_back(
          "populated levels closer than the resolvability bound remain; "
          "they fall inside one coarse group");
    return report;
  }

  report.k_chosen = kNan;
  report.delta_E = kNan;
  report.x = kNan;

  // No admissible coarse graining. High-energy states can still be
  // operationally indistinguishable from the unitary evolution.
  if (!populated.empty()) {
    const double support_gap = spec.energy(populated.back()) -
                               spec.energy(populated.front());
    const double a =
        std::exp(-support_gap * support_gap / (4.0 * report.lambda));
    report.fidelity_floor = std::sqrt(0.5 * (1.0 + a));
  }
  if (report.d_param <= options.d_hi && report.r_param <= options.r_hi &&
      report.fidelity_floor &&
      *report.fidelity_floor >= options.fid_tol) {
    report.domain = Domain::unitary_like;
    return report;
  }
  report.domain = Domain::non_markovian;
  return report;
}

double fidelity_floor(const SpectralDecomposition &spec, const Vector &psi,
                      double lambda, double pop_tol) {
  if (!(lambda > 0))
    throw std::invalid_argument("lambda must be positive");
  if (psi.size() != spec.dim())
    throw std::invalid_argument("state dimension mismatch");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9)
    throw std::invalid_argument("state must be normalized");
  const Vector in_basis = spec.has_basis() ? Vector(spec.basis().adjoint() * psi)
                                           : psi;
  std::vector<int> support;
  for (int m = 0; m < spec.level_count(); ++m)
    if (in_basis.segment(spec.offset(m), spec.multiplicity(m)).squaredNorm() >
        pop_tol)
      support.push_back(m);
  if (support.size() != 2)
    throw std::invalid_argument("state must be supported on exactly two levels");
  const double gap = spec.energy(support[1]) - spec.energy(support[0]);
  const double a = std::exp(-gap * gap / (4.0 * lambda));
  return std::sqrt(0.5 * (1.0 + a));
}

NearFactor near_factor(const SpectralDecomposition &spec, double k, double x,
                       double r_small, double s, int level_index,
                       double lambda) {
  if (!(k > 0) || !(x > 0) || !(r_small > 0) || !(s > 0) || !(lambda > 0))
    throw std::invalid_argument("parameters must be positive");
  if (level_index < 0 || level_index >= spec.level_count())
    throw std::invalid_argument("level index out of range");
  const double width = spec.spectral_width();
  if (!(width > 0))
    throw std::invalid_argument("spectrum has zero width");
  const double denom = 1.0 - k * spec.energy(level_index) / width;
  if (denom <= 0)
    throw std::invalid_argument("k E_m / E >= 1: no positive x exists");
  const double x_expected = (r_small * s + 1.0) / denom;
  if (std::abs(x - x_expected) > 1e-9 * std::max(1.0, std::abs(x_expected)))
    throw std::invalid_argument("inconsistent (k, x, r, s) tuple");
  NearFactor out;
  out.delta_m = r_small * width / (x * k);
  out.convention_a = std::exp(-out.delta_m * out.delta_m / (4.0 * lambda));
  out.convention_b = std::exp(-out.delta_m * out.delta_m / lambda);
  return out;
}

} // namespace lts
