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

#include "lts/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace lts {

CpReport is_cp(const BlockCoefficientMap &map, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(map.coeff);
  const double min_eig = solver.eigenvalues().minCoeff();
  CpReport report{min_eig, min_eig >= -psd_tol, std::nullopt};
  Eigen::Index imin;
  solver.eigenvalues().minCoeff(&imin);
  report.witness = solver.eigenvectors().col(imin);
  return report;
}

double jamiolkowski_check(const BlockCoefficientMap &map,
                          const std::vector<Vector> &probes) {
  const auto &spec = *map.spec;
  const std::int64_t d = spec.dim();
  if (d > 64)
    throw std::invalid_argument(
        "jamiolkowski_check refuses d > 64 (dense d^2 extended state)");
  if (probes.empty())
    throw std::invalid_argument("no probes supplied");

  // Extended state M[(i,l),(j,l')] = E[|i><j|]_{l,l'} / d.
  Matrix ext = Matrix::Zero(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      unit(i, j) = 1.0;
      const Matrix image = apply_matrix(map, unit) / static_cast<double>(d);
      unit(i, j) = 0.0;
      for (std::int64_t l = 0; l < d; ++l)
        for (std::int64_t lp = 0; lp < d; ++lp)
          ext(i * d + l, j * d + lp) = image(l, lp);
    }

  double min_val = std::numeric_limits<double>::infinity();
  for (const auto &phi : probes) {
    if (phi.size() != d * d)
      throw std::invalid_argument("probe dimension mismatch");
    const Vector unit_phi = phi / phi.norm();
    min_val = std::min(min_val,
                       (unit_phi.adjoint() * ext * unit_phi)(0).real());
  }
  return min_val;
}

Vector lift_witness(const SpectralDecomposition &spec, const Vector &witness) {
  if (witness.size() != spec.level_count())
    throw std::invalid_argument("witness must have one amplitude per level");
  const std::int64_t d = spec.dim();
  // phi = sum_m w_m |i_m>|i_m'> with i_m the first index of level m in the
  // eigenbasis; assumes the computational layout (no basis rotation).
  Vector phi = Vector::Zero(d * d);
  for (int m = 0; m < spec.level_count(); ++m) {
    const std::int64_t i = spec.offset(m);
    phi(i * d + i) = witness(m);
  }
  return phi;
}

BlockCoefficientMap intermediate_map(const BlockCoefficientMap &total,
                                     const BlockCoefficientMap &initial,
                                     double zero_tol) {
  if (total.coeff.rows() != initial.coeff.rows())
    throw std::invalid_argument("maps are defined over different spectra");
  const int n = total.level_count();
  Matrix c(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      const Complex denom = initial.coeff(m, k);
      const Complex num = total.coeff(m, k);
      if (std::abs(denom) <= zero_tol) {
        if (std::abs(num) <= zero_tol) {
          c(m, k) = 0.0;
          continue;
        }
        throw std::runtime_error("family not invertible at this block");
      }
      c(m, k) = num / denom;
    }
  return {total.spec, std::move(c),
          std::numeric_limits<double>::quiet_NaN(), {}};
}

double family_divisibility_defect(
    std::shared_ptr<const SpectralDecomposition> spec,
    const LocalTimeParams &params, double t_prime) {
  if (!(t_prime > 0) || t_prime > params.t0)
    throw std::invalid_argument("need 0 < t' <= t0");
  const auto total = exact_map(spec, params);
  LocalTimeParams first{t_prime, params.lambda, std::nullopt};
  LocalTimeParams second{params.t0 - t_prime, params.lambda, std::nullopt};
  const auto composed = compose(exact_map(spec, second),
                                exact_map(spec, first));
  return (total.coeff - composed.coeff).cwiseAbs().maxCoeff();
}

ErgodicAverage ergodic_average(std::shared_ptr<const SpectralDecomposition> spec,
                               const LocalTimeParams &params,
                               const DensityMatrix &rho, double t_max,
                               int n_samples) {
  if (!(t_max > 0))
    throw std::invalid_argument("t_max must be positive");
  if (n_samples < 2)
    throw std::invalid_argument("need at least 2 samples");

  // The map is linear in its coefficients, so the trapezoid average of the
  // evolved states equals one application of the time-averaged coefficients.
  const int n = spec->level_count();
  Matrix avg = Matrix::Zero(n, n);
  const double h = t_max / (n_samples - 1);
  double wsum = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const double w = (s == 0 || s == n_samples - 1) ? 0.5 : 1.0;
    LocalTimeParams p{s * h, params.lambda, std::nullopt};
    avg += w * exact_map(spec, p).coeff;
    wsum += w;
  }
  avg /= wsum;
  BlockCoefficientMap mean_map{spec, std::move(avg),
                               std::numeric_limits<double>::quiet_NaN(), {}};
  DensityMatrix numeric = apply(mean_map, rho);
  DensityMatrix analytic = luders_project(rho, *spec);
  const double gap = trace_distance(analytic, numeric);
  return {std::move(analytic), std::move(numeric), gap};
}

const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::markovian:
    return "markovian";
  case Verdict::non_markovian_by_composition:
    return "non-markovian-by-composition";
  case Verdict::non_markovian_by_cp:
    return "non-markovian-by-cp";
  }
  return "unknown";
}

MarkovianityVerdict
markovianity_verdict(const std::vector<double> &times,
                     const std::vector<BlockCoefficientMap> &family,
                     double composition_tol) {
  if (times.size() != family.size())
    throw std::invalid_argument("times/family size mismatch");
  if (times.size() < 3)
    throw std::invalid_argument("need at least 3 time points");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("times must be strictly increasing");

  MarkovianityVerdict out;
  bool composition_ok = true;
  bool cp_ok = true;
  const double t_tol = 1e-9 * (times.back() - times.front());

  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      PairEvidence ev{static_cast<int>(i), static_cast<int>(j),
                      {}, std::nullopt};
      const auto inter = intermediate_map(family[j], family[i]);
      ev.intermediate_cp = is_cp(inter);
      if (!ev.intermediate_cp.is_cp)
        cp_ok = false;

      // Composition law is testable when the family contains a member at
      // the elapsed time t_j - t_i.
      const double elapsed = times[j] - times[i];
      for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(times[k] - elapsed) <= t_tol) {
          const auto composed = compose(family[k], family[i]);
          ev.composition_defect =
              (family[j].coeff - composed.coeff).cwiseAbs().maxCoeff();
          if (*ev.composition_defect > composition_tol) {
            composition_ok = false;
            if (out.detail.empty())
              out.detail = "composition fails at pair (" +
                           std::to_string(i) + "," + std::to_string(j) + ")";
          }
          break;
        }
      }
      out.pairs.push_back(std::move(ev));
    }

  if (!composition_ok)
    out.verdict = Verdict::non_markovian_by_composition;
  else if (!cp_ok)
    out.verdict = Verdict::non_markovian_by_cp;
  else
    out.verdict = Verdict::markovian;
  return out;
}

} // namespace lts
