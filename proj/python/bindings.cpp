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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lts/classify.hpp"
#include "lts/coarse.hpp"
#include "lts/markov.hpp"
#include "lts/opensys.hpp"

namespace py = pybind11;
using namespace lts;

namespace {

std::shared_ptr<const SpectralDecomposition> share(SpectralDecomposition s) {
  return std::make_shared<const SpectralDecomposition>(std::move(s));
}

LocalTimeParams make_params(double t0, double lambda) {
  return {t0, lambda, std::nullopt};
}

py::dict report_to_dict(const DomainReport &r) {
  py::dict d;
  d["d_param"] = r.d_param;
  d["r_param"] = r.r_param;
  d["k_feasible"] = r.k_feasible
                        ? py::object(py::make_tuple(r.k_feasible->first,
                                                    r.k_feasible->second))
                        : py::object(py::none());
  d["k_chosen"] = r.k_chosen;
  d["delta_E"] = r.delta_E;
  d["x"] = r.x;
  d["r_small"] = r.r_small;
  d["s"] = r.s;
  d["lambda"] = r.lambda;
  d["domain"] = to_string(r.domain);
  d["fidelity_floor"] = r.fidelity_floor ? py::object(py::float_(
                                               *r.fidelity_floor))
                                         : py::object(py::none());
  d["pairwise_resolvable"] = r.pairwise_resolvable;
  d["notes"] = r.notes;
  return d;
}

} // namespace

PYBIND11_MODULE(_lts, m) {
  m.doc() = "Local-time dynamical maps: spectra, block maps, Markovianity";

  py::class_<SpectralDecomposition,
             std::shared_ptr<SpectralDecomposition>>(m, "Spectrum")
      .def_property_readonly("dim", &SpectralDecomposition::dim)
      .def_property_readonly("level_count",
                             &SpectralDecomposition::level_count)
      .def_property_readonly("energies",
                             [](const SpectralDecomposition &s) {
                               return s.energies();
                             })
      .def_property_readonly("multiplicities",
                             &SpectralDecomposition::multiplicities)
      .def_property_readonly("energy_scale",
                             &SpectralDecomposition::energy_scale)
      .def("projector", &SpectralDecomposition::projector)
      .def("hamiltonian", &SpectralDecomposition::hamiltonian);

  m.def(
      "spin_ensemble",
      [](int n, double omega0) { return share(spin_ensemble(n, omega0)); },
      py::arg("n_spins"), py::arg("omega0") = 1.0);
  m.def(
      "oscillator_modes",
      [](int modes, double omega0, int nu_max) {
        return share(oscillator_modes(modes, omega0, nu_max));
      },
      py::arg("n_modes"), py::arg("omega0") = 1.0, py::arg("nu_max") = 4);
  m.def(
      "from_diagonal",
      [](const std::vector<double> &energies, double tol) {
        return share(from_diagonal(energies, tol));
      },
      py::arg("energies"), py::arg("degeneracy_tol") = 1e-9);
  m.def(
      "from_hermitian",
      [](const Matrix &h, double tol) { return share(from_hermitian(h, tol)); },
      py::arg("matrix"), py::arg("degeneracy_tol") = 1e-9);

  m.def(
      "map_coefficients",
      [](std::shared_ptr<const SpectralDecomposition> spec, double t0,
         double lambda) { return exact_map(spec, make_params(t0, lambda)).coeff; },
      py::arg("spectrum"), py::arg("t0"), py::arg("lambda_"),
      "Coefficient matrix of the exact dynamical map over distinct levels.");

  m.def(
      "evolve",
      [](std::shared_ptr<const SpectralDecomposition> spec, const Matrix &rho,
         double t0, double lambda) {
        return apply(exact_map(spec, make_params(t0, lambda)),
                     DensityMatrix(rho))
            .matrix();
      },
      py::arg("spectrum"), py::arg("rho"), py::arg("t0"), py::arg("lambda_"));

  m.def(
      "luders",
      [](std::shared_ptr<const SpectralDecomposition> spec,
         const Matrix &rho) {
        return luders_project(DensityMatrix(rho), *spec).matrix();
      },
      py::arg("spectrum"), py::arg("rho"),
      "Cross-level truncation: the ergodic average / steady state.");

  m.def(
      "kraus_operators",
      [](std::shared_ptr<const SpectralDecomposition> spec, double t0,
         double lambda) {
        return kraus_decomposition(exact_map(spec, make_params(t0, lambda)))
            .operators;
      },
      py::arg("spectrum"), py::arg("t0"), py::arg("lambda_"));

  m.def(
      "min_cp_eigenvalue",
      [](std::shared_ptr<const SpectralDecomposition> spec, double t0,
         double lambda) {
        return is_cp(exact_map(spec, make_params(t0, lambda))).min_eigenvalue;
      },
      py::arg("spectrum"), py::arg("t0"), py::arg("lambda_"));

  m.def(
      "intermediate_min_eigenvalue",
      [](std::shared_ptr<const SpectralDecomposition> spec, double t_initial,
         double t_total, double lambda) {
        const auto inter =
            intermediate_map(exact_map(spec, make_params(t_total, lambda)),
                             exact_map(spec, make_params(t_initial, lambda)));
        return is_cp(inter).min_eigenvalue;
      },
      py::arg("spectrum"), py::arg("t_initial"), py::arg("t_total"),
      py::arg("lambda_"),
      "Min CP eigenvalue of the two-instant intermediate map.");

  m.def(
      "classify",
      [](std::shared_ptr<const SpectralDecomposition> spec, const Matrix &rho,
         std::optional<double> lambda) {
        ClassifyOptions options;
        if (lambda)
          options.lambda_policy = LambdaPolicy::explicit_value(*lambda);
        return report_to_dict(classify_state(*spec, DensityMatrix(rho),
                                             options));
      },
      py::arg("spectrum"), py::arg("rho"),
      py::arg("lambda_") = std::nullopt,
      "Markovianity state-domain report as a dict.");

  m.def(
      "fidelity_floor",
      [](std::shared_ptr<const SpectralDecomposition> spec, const Vector &psi,
         double lambda) { return fidelity_floor(*spec, psi, lambda); },
      py::arg("spectrum"), py::arg("psi"), py::arg("lambda_"));

  m.def(
      "extreme_superposition",
      [](std::shared_ptr<const SpectralDecomposition> spec, int sign) {
        return extreme_superposition(*spec, sign);
      },
      py::arg("spectrum"), py::arg("sign") = 1);

  m.def("version", [] { return "1.0.0"; });
}
