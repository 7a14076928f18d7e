// Copyright 2026 The parity-proxy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "parity/circuit.h"
#include "parity/errors.h"
#include "parity/experiment.h"
#include "parity/fock.h"
#include "parity/gaussian.h"
#include "parity/homodyne.h"
#include "parity/montecarlo.h"

namespace py = pybind11;
using namespace parity;

namespace {

py::dict table_to_dict(const Table &t) {
    py::dict d;
    d["columns"] = t.columns;
    d["rows"] = t.rows;
    py::dict summary;
    for (const auto &[k, v] : t.summary) {
        summary[py::str(k)] = v;
    }
    d["summary"] = summary;
    return d;
}

ExperimentConfig config_from_kwargs(Command command, const py::kwargs &kwargs) {
    ExperimentConfig c;
    c.command = command;
    for (auto item : kwargs) {
        std::string key = py::str(item.first);
        py::handle v = item.second;
        if (key == "r") {
            c.r = v.cast<double>();
        } else if (key == "phi_start") {
            c.phi_start = v.cast<double>();
        } else if (key == "phi_stop") {
            c.phi_stop = v.cast<double>();
        } else if (key == "steps") {
            c.steps = v.cast<int64_t>();
        } else if (key == "beta") {
            c.beta_mag = v.cast<double>();
        } else if (key == "prescription") {
            c.prescription = parse_prescription(v.cast<std::string>());
        } else if (key == "shots") {
            c.shots = v.cast<int64_t>();
        } else if (key == "seed") {
            c.seed = v.cast<uint64_t>();
        } else if (key == "cutoff") {
            c.cutoff = v.cast<int64_t>();
        } else if (key == "error_model") {
            c.error_model = parse_error_model(v.cast<std::string>());
        } else {
            throw ConfigError("unknown option '" + key + "'");
        }
    }
    return c;
}

}  // namespace

PYBIND11_MODULE(parity_proxy, m) {
    m.doc() = "Parity-by-proxy simulator for a two-mode squeezed-vacuum Mach-Zehnder interferometer";
    m.attr("__version__") = kVersion;

    py::register_exception<UnphysicalMomentsError>(m, "UnphysicalMomentsError", PyExc_ValueError);
    py::register_exception<UndefinedSensitivityError>(m, "UndefinedSensitivityError", PyExc_ValueError);
    py::register_exception<CutoffError>(m, "CutoffError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Prescription>(m, "Prescription")
        .value("THREE", Prescription::kThree)
        .value("FOUR", Prescription::kFour);

    py::class_<GaussianMoments>(m, "GaussianMoments")
        .def(py::init([](cdouble alpha0, cdouble u, double tau) { return GaussianMoments{alpha0, u, tau}; }),
             py::arg("alpha0") = cdouble{}, py::arg("u") = cdouble{}, py::arg("tau") = 0.5)
        .def_readwrite("alpha0", &GaussianMoments::alpha0)
        .def_readwrite("u", &GaussianMoments::u)
        .def_readwrite("tau", &GaussianMoments::tau)
        .def("determinant", &GaussianMoments::determinant)
        .def("is_physical", &GaussianMoments::is_physical, py::arg("tol") = kPhysicalityTolerance)
        .def("__repr__", [](const GaussianMoments &g) {
            std::stringstream ss;
            ss << "GaussianMoments(alpha0=" << g.alpha0 << ", u=" << g.u << ", tau=" << g.tau << ")";
            return ss.str();
        });

    m.def("moments_from_raw", &moments_from_raw, py::arg("a_mean"), py::arg("asq_mean"), py::arg("n_mean"));
    m.def("wigner_value", &wigner_value, py::arg("moments"), py::arg("alpha"));
    m.def("wigner_at_origin", &wigner_at_origin, py::arg("moments"));
    m.def("parity_expectation", &parity_expectation, py::arg("moments"));

    py::class_<BogoliubovTransform>(m, "BogoliubovTransform")
        .def_property_readonly("num_modes", &BogoliubovTransform::num_modes)
        .def_property_readonly("matrix", &BogoliubovTransform::matrix)
        .def("quadrature_matrix", &BogoliubovTransform::quadrature_matrix)
        .def("commutation_defect", &BogoliubovTransform::commutation_defect)
        .def("symplectic_defect", &BogoliubovTransform::symplectic_defect)
        .def("is_passive", &BogoliubovTransform::is_passive, py::arg("tol") = 1e-14);
    m.def("build_proxy_circuit", &build_proxy_circuit, py::arg("phi"), py::arg("theta"), py::arg("r"));

    py::class_<MultiModeMoments>(m, "MultiModeMoments")
        .def_readonly("mean", &MultiModeMoments::mean)
        .def_readonly("A", &MultiModeMoments::A)
        .def_readonly("B", &MultiModeMoments::B)
        .def("intensity", &MultiModeMoments::intensity, py::arg("mode"))
        .def("reduce", [](const MultiModeMoments &s, size_t mode) { return reduce_mode(s, mode); }, py::arg("mode"));
    m.def("mzi_output", &mzi_output, py::arg("phi"), py::arg("r"));
    m.def(
        "x_measurement",
        [](const MultiModeMoments &s, double theta, double beta) { return x_measurement(s, theta, beta).value; },
        py::arg("state"), py::arg("theta"), py::arg("beta"));

    py::class_<ProxyReadout>(m, "ProxyReadout")
        .def_readonly("phi", &ProxyReadout::phi)
        .def_readonly("asq", &ProxyReadout::asq)
        .def_readonly("n_f", &ProxyReadout::n_f)
        .def_readonly("signal", &ProxyReadout::signal)
        .def_readonly("parity_gaussian", &ProxyReadout::parity_gaussian)
        .def_property_readonly("x", [](const ProxyReadout &p) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto &x : p.x) {
                out.emplace_back(x.theta, x.beta_mag, x.value);
            }
            return out;
        });
    m.def("proxy_readout", &proxy_readout, py::arg("phi"), py::arg("r"), py::arg("beta") = 2.0,
          py::arg("prescription") = Prescription::kThree);
    m.def("bias_shift", &bias_shift, py::arg("phi"));
    m.def("signal_closed_form", &signal_closed_form, py::arg("n_bar"), py::arg("phi"));
    m.def("total_photons", &total_photons, py::arg("r"));
    m.def(
        "phase_sensitivity", [](double r, double phi) { return phase_sensitivity(r, phi).delta_phi; }, py::arg("r"),
        py::arg("phi"));

    m.def(
        "fock_parity",
        [](double phi, double r, size_t cutoff) { return mode_parity_fock(mzi_output_fock(phi, r, cutoff), 1); },
        py::arg("phi"), py::arg("r"), py::arg("cutoff") = 60,
        "Parity of the interferometer output mode from the truncated Fock simulation.");

    m.def(
        "run_proxy_experiment",
        [](double phi, double r, double beta, int64_t shots, uint64_t seed, Prescription prescription, size_t cutoff) {
            ExperimentOptions options;
            options.cutoff = cutoff;
            auto res = run_proxy_experiment(ShotPlan::for_prescription(prescription, beta, shots, seed), phi, r, options);
            py::dict d;
            d["mean"] = res.parity.mean;
            d["stderr"] = res.parity.std_error;
            d["shots"] = res.parity.shots;
            d["valid"] = res.valid;
            d["asq"] = res.asq;
            d["n_f"] = res.n_f;
            return d;
        },
        py::arg("phi"), py::arg("r"), py::arg("beta") = 2.0, py::arg("shots") = 100000, py::arg("seed") = 1,
        py::arg("prescription") = Prescription::kThree, py::arg("cutoff") = 60);

    m.def(
        "sweep", [](const py::kwargs &kw) { return table_to_dict(run_sweep(config_from_kwargs(Command::kSweep, kw))); });
    m.def("sensitivity", [](const py::kwargs &kw) {
        return table_to_dict(run_sensitivity(config_from_kwargs(Command::kSensitivity, kw)));
    });
    m.def("montecarlo", [](const py::kwargs &kw) {
        return table_to_dict(run_montecarlo(config_from_kwargs(Command::kMonteCarlo, kw)));
    });
    m.def("validate", [](const py::kwargs &kw) {
        auto report = run_validate(config_from_kwargs(Command::kValidate, kw));
        py::dict d;
        for (const auto &c : report.checks) {
            d[py::str(c.name)] = py::make_tuple(c.passed, c.max_deviation, c.tolerance, c.detail);
        }
        return d;
    });
}
