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

#ifndef LTS_MARKOV_HPP
#define LTS_MARKOV_HPP

#include <optional>
#include <string>
#include <vector>

#include "lts/block_map.hpp"

namespace lts {

inline constexpr double kPsdTol = 1e-10;

struct CpReport {
  double min_eigenvalue;
  bool is_cp;
  std::optional<Vector> witness; // block-index amplitudes
};

/// Exact CP test for eigenblock-Schur maps: the map is CP iff its complex
/// coefficient matrix is positive semidefinite.
CpReport is_cp(const BlockCoefficientMap &map, double psd_tol = kPsdTol);

/// Jamiolkowski probing: minimum over probes of
/// <phi| (I (x) E)[|psi><psi|] |phi> with |psi> maximally entangled.
/// Independent sampled cross-check of is_cp. Refuses d > 64.
double jamiolkowski_check(const BlockCoefficientMap &map,
                          const std::vector<Vector> &probes);

/// Lifts a block-index CP witness to a d^2 probe vector for
/// jamiolkowski_check.
Vector lift_witness(const SpectralDecomposition &spec, const Vector &witness);

/// Coefficient-wise quotient total/initial: the unique block map with
/// total = intermediate o initial. Blocks where both coefficients vanish
/// get 0; a vanishing initial coefficient under a nonzero total one throws
/// "family not invertible at this block".
BlockCoefficientMap intermediate_map(const BlockCoefficientMap &total,
                                     const BlockCoefficientMap &initial,
                                     double zero_tol = 1e-300);

/// max over blocks of |c_exact(t0) - c_exact(t0 - t') c_exact(t')|; strictly
/// positive for every nondegenerate spectrum at finite lambda.
double family_divisibility_defect(
    std::shared_ptr<const SpectralDecomposition> spec,
    const LocalTimeParams &params, double t_prime);

struct ErgodicAverage {
  DensityMatrix analytic; // Lueders projection
  DensityMatrix numeric;  // trapezoid time average of sigma(t0)
  double gap;             // trace distance between the two
};

ErgodicAverage ergodic_average(std::shared_ptr<const SpectralDecomposition> spec,
                               const LocalTimeParams &params,
                               const DensityMatrix &rho, double t_max,
                               int n_samples);

enum class Verdict { markovian, non_markovian_by_composition,
                     non_markovian_by_cp };

struct PairEvidence {
  int i, j; // family indices, t_i < t_j
  CpReport intermediate_cp;
  // Composition defect vs the family member at t_j - t_i, when one exists.
  std::optional<double> composition_defect;
};

struct MarkovianityVerdict {
  Verdict verdict;
  std::vector<PairEvidence> pairs;
  std::string detail;
};

/// Applies the divisibility definition literally: Markovian requires every
/// intermediate map CP and the family composition law satisfied wherever it
/// is testable on the given time grid.
MarkovianityVerdict
markovianity_verdict(const std::vector<double> &times,
                     const std::vector<BlockCoefficientMap> &family,
                     double composition_tol = 1e-9);

const char *to_string(Verdict v);

} // namespace lts

#endif
