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

#ifndef LTS_CLASSIFY_HPP
#define LTS_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "lts/states.hpp"

namespace lts {

enum class Domain { coarse_markovian, unitary_like, non_markovian };

std::string to_string(Domain domain);

/// Dephasing-width policy: either an explicit lambda or the minimal
/// admissible choice lambda = multiplier * (2 min{dH, <H> - E_g} / pi)^2,
/// sitting just above the lower bound on sqrt(lambda).
struct LambdaPolicy {
  std::optional<double> explicit_lambda;
  double minimal_multiplier = 1.1;

  static LambdaPolicy minimal(double multiplier = 1.1) {
    return {std::nullopt, multiplier};
  }
  static LambdaPolicy explicit_value(double lambda) {
    return {lambda, 1.1};
  }
};

struct ClassifyOptions {
  LambdaPolicy lambda_policy;
  double pop_tol = 1e-6; // levels below this population are ignored
  double d_hi = 2.1;     // unitary-like requires d <= d_hi ...
  double r_hi = 2.1;     // ... and r <= r_hi ...
  double fid_tol = 0.70; // ... and fidelity floor >= fid_tol
  double r_small = 1.0;  // the "r >~ 1" resolution ratio
  double s = 9.0;        // the "s >~ 1" indistinguishability ratio
};

struct DomainReport {
  double d_param = 0.0; // E / dH
  double r_param = 0.0; // E / (<H> - E_g)
  // Open interval of admissible coarsening exponents k; absent if no k > 1
  // satisfies every bound.
  std::optional<std::pair<double, double>> k_feasible;
  double k_chosen = 0.0; // midpoint of k_feasible; NaN when infeasible
  double delta_E = 0.0;  // measurement error E / (x k); NaN when infeasible
  double x = 0.0;        // (r_small s + 1) / (1 - k E_m / E), minimized over
                         // populated levels; NaN when infeasible
  double r_small = 0.0;
  double s = 0.0;
  double lambda = 0.0; // the lambda actually used
  Domain domain = Domain::non_markovian;
  std::optional<double> fidelity_floor;
  bool pairwise_resolvable = false; // cross-group gap ratio > 4 everywhere
  std::vector<std::string> notes;
};

/// Three-way Markovianity state-domain decision for a closed system.
DomainReport classify_state(const SpectralDecomposition &spec,
                            const DensityMatrix &rho,
                            const ClassifyOptions &options = {});

/// Time-independent fidelity sqrt((1 + A)/2),
/// A = exp(-(E_a - E_b)^2 / 4 lambda), for a pure state supported on
/// exactly two levels a and b.
double fidelity_floor(const SpectralDecomposition &spec, const Vector &psi,
                      double lambda, double pop_tol = 1e-9);

struct NearFactor {
  double delta_m;       // r_small * E / (x k)
  double convention_a;  // exp(-delta_m^2 / 4 lambda)
  double convention_b;  // exp(-delta_m^2 / lambda)
};

/// Residual-gap Gaussian factor for level m under the (k, x, r_small, s)
/// bookkeeping; the tuple must satisfy x = (r_small s + 1)/(1 - k E_m / E).
/// Both exponent conventions are reported.
NearFactor near_factor(const SpectralDecomposition &spec, double k, double x,
                       double r_small, double s, int level_index,
                       double lambda);

} // namespace lts

#endif
