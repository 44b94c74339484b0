// Copyright 2026 The rydtransfer Authors
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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rydtransfer/disorder.hpp"
#include "rydtransfer/dynamics.hpp"
#include "rydtransfer/effective.hpp"
#include "rydtransfer/errors.hpp"
#include "rydtransfer/model.hpp"
#include "rydtransfer/optimize.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace rydtransfer;

namespace {

ArrayGeometry chain(int n_atoms, double spacing, double c6, const std::vector<double>& deviations,
                    const std::string& range) {
    InteractionRange r = InteractionRange::nn_nnn;
    if (range == "full")
        r = InteractionRange::full;
    else if (range != "nn_nnn")
        throw DomainError("range must be 'nn_nnn' or 'full'");
    return build_geometry(n_atoms, spacing, c6, deviations, r);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Excitation transfer in Rydberg-dressed atom chains";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResonanceError>(m, "ResonanceError", domain.ptr());
    py::register_exception<CollisionError>(m, "CollisionError", domain.ptr());
    py::register_exception<NoPeakError>(m, "NoPeakError", PyExc_RuntimeError);
    py::register_exception<NoRootError>(m, "NoRootError", PyExc_RuntimeError);
    py::register_exception<NumericalInstabilityError>(m, "NumericalInstabilityError", PyExc_ArithmeticError);

    m.attr("C6") = constants::kC6;
    m.attr("SPACING") = constants::kSpacing;

    py::class_<DriveParams>(m, "DriveParams")
        .def(py::init<double, double, double, double>(), "omega0"_a, "omega"_a, "delta0"_a, "delta"_a)
        .def_readwrite("omega0", &DriveParams::omega0)
        .def_readwrite("omega", &DriveParams::omega)
        .def_readwrite("delta0", &DriveParams::delta0)
        .def_readwrite("delta", &DriveParams::delta)
        .def("warnings", &DriveParams::warnings, "v_nn"_a)
        .def(py::self == py::self)
        .def("__repr__", [](const DriveParams& d) {
            return "DriveParams(omega0=" + std::to_string(d.omega0) + ", omega=" + std::to_string(d.omega) +
                   ", delta0=" + std::to_string(d.delta0) + ", delta=" + std::to_string(d.delta) + ")";
        });

    py::enum_<DephasingModel>(m, "DephasingModel")
        .value("collective", DephasingModel::collective)
        .value("independent", DephasingModel::independent);

    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init([](double dephasing, double decay, DephasingModel model) {
                 return NoiseParams{dephasing, decay, model};
             }),
             "dephasing"_a = 0.0, "decay"_a = 0.0, "model"_a = DephasingModel::collective)
        .def_readwrite("dephasing", &NoiseParams::dephasing)
        .def_readwrite("decay", &NoiseParams::decay)
        .def_readwrite("model", &NoiseParams::dephasing_model);

    py::class_<ArrayGeometry>(m, "Geometry")
        .def(py::init(&chain), "n_atoms"_a, "spacing"_a = constants::kSpacing, "c6"_a = constants::kC6,
             "deviations"_a = std::vector<double>{}, "range"_a = "nn_nnn")
        .def_property_readonly("size", &ArrayGeometry::size)
        .def_property_readonly("spacing", &ArrayGeometry::spacing)
        .def_property_readonly("interactions", &ArrayGeometry::interactions)
        .def_property_readonly("nominal_nn", &ArrayGeometry::nominal_nn)
        .def_property_readonly("nominal_nnn", &ArrayGeometry::nominal_nnn)
        .def("interaction", &ArrayGeometry::interaction, "j"_a, "k"_a);

    m.def("vdw_pair", &vdw_pair, "c6"_a, "distance"_a);

    m.def(
        "hamiltonian",
        [](const ArrayGeometry& g, const DriveParams& d, int n_max) {
            return build_hamiltonian(enumerate_basis(g.size(), n_max), g, d);
        },
        "geometry"_a, "drive"_a, "n_max"_a = 2, "Full Hamiltonian in rad/us on the truncated basis.");
    m.def(
        "basis_states", [](int n_atoms, int n_max) { return enumerate_basis(n_atoms, n_max).states(); },
        "n_atoms"_a, "n_max"_a);

    py::class_<EffectiveCouplings>(m, "EffectiveCouplings")
        .def_readonly("j0", &EffectiveCouplings::j0)
        .def_readonly("j", &EffectiveCouplings::j)
        .def_readonly("j0p", &EffectiveCouplings::j0p)
        .def_readonly("jp", &EffectiveCouplings::jp)
        .def_readonly("onsite", &EffectiveCouplings::onsite)
        .def("hamiltonian", [](const EffectiveCouplings& c) {
            return local_effective_hamiltonian(c, static_cast<int>(c.onsite.size()));
        });

    py::class_<WcReduction>(m, "WcReduction")
        .def_readonly("j_w", &WcReduction::j_w)
        .def_readonly("i_w", &WcReduction::i_w)
        .def_readonly("h_wc", &WcReduction::h_wc);

    const double v_nn = vdw_pair(constants::kC6, constants::kSpacing);
    const double v_nnn = vdw_pair(constants::kC6, 2 * constants::kSpacing);
    m.def(
        "wc_couplings", [](const DriveParams& d, int n, double vnn, double vnnn) { return wc_couplings(d, vnn, vnnn, n); },
        "drive"_a, "n_atoms"_a, "v_nn"_a = v_nn, "v_nnn"_a = v_nnn);
    m.def(
        "uniform_couplings", [](const DriveParams& d, int n, double vnn, double vnnn) { return uniform_couplings(d, vnn, vnnn, n); },
        "drive"_a, "n_atoms"_a, "v_nn"_a = v_nn, "v_nnn"_a = v_nnn);
    m.def(
        "reduce_to_wc",
        [](const DriveParams& d, int n, double vnn, double vnnn) { return reduce_to_wc(wc_couplings(d, vnn, vnnn, n), n); },
        "drive"_a, "n_atoms"_a, "v_nn"_a = v_nn, "v_nnn"_a = v_nnn);
    m.def("h0_spectrum", &h0_spectrum, "j"_a, "n_atoms"_a);
    m.def("estimate_transfer_time", &estimate_transfer_time, "j_w"_a);

    py::class_<ModResult>(m, "ModResult")
        .def_readonly("delta0", &ModResult::delta0_root)
        .def_readonly("ratio", &ModResult::ratio)
        .def_readonly("residual", &ModResult::residual)
        .def_readonly("iterations", &ModResult::iterations);
    m.def(
        "solve_mod_detuning",
        [](const DriveParams& d, int n, double vnn, double vnnn) { return solve_mod_detuning(d, vnn, vnnn, n); },
        "drive"_a, "n_atoms"_a, "v_nn"_a = v_nn, "v_nnn"_a = v_nnn);

    py::class_<StateDiagnostics>(m, "StateDiagnostics")
        .def_readonly("max_trace_drift", &StateDiagnostics::max_trace_drift)
        .def_readonly("max_hermiticity", &StateDiagnostics::max_hermiticity)
        .def_readonly("min_eigenvalue", &StateDiagnostics::min_eigenvalue)
        .def_readonly("max_leakage", &StateDiagnostics::max_leakage);

    py::class_<TransferResult>(m, "TransferResult")
        .def_readonly("fidelity", &TransferResult::fidelity)
        .def_readonly("transfer_time", &TransferResult::transfer_time)
        .def_readonly("window", &TransferResult::window)
        .def_readonly("diagnostics", &TransferResult::diagnostics)
        .def_property_readonly("times", [](const TransferResult& r) { return r.trace.times; })
        .def_property_readonly("trace", [](const TransferResult& r) { return r.trace.fidelity; })
        .def_property_readonly("populations", [](const TransferResult& r) { return r.trace.populations; });

    m.def(
        "simulate_transfer",
        [](const ArrayGeometry& g, const DriveParams& d, const NoiseParams& noise, int n_max,
           std::optional<double> t_max, int n_samples, const std::string& method) {
            TransferSettings s;
            s.n_max = n_max;
            s.t_max = t_max;
            s.n_samples = n_samples;
            if (method == "rk4")
                s.method = Propagator::rk4;
            else if (method != "exponential")
                throw DomainError("method must be 'exponential' or 'rk4'");
            py::gil_scoped_release release;
            return simulate_transfer(g, d, noise, s);
        },
        "geometry"_a, "drive"_a, "noise"_a = NoiseParams{}, "n_max"_a = 2, "t_max"_a = py::none(),
        "n_samples"_a = 2000, "method"_a = "exponential");

    py::class_<DisorderResult>(m, "DisorderResult")
        .def_readonly("mean_fidelity", &DisorderResult::mean_fidelity)
        .def_readonly("std_error", &DisorderResult::std_error)
        .def_readonly("sigma_um", &DisorderResult::sigma_um)
        .def_readonly("n_rejected", &DisorderResult::n_rejected)
        .def_property_readonly("fidelities", [](const DisorderResult& r) {
            std::vector<double> f;
            for (const auto& o : r.per_realization) f.push_back(o.fidelity);
            return f;
        });

    m.def(
        "thermal_sigma",
        [](double temperature_uk, double trap_frequency_khz) {
            DisorderConfig c;
            c.temperature_uk = temperature_uk;
            c.trap_frequency_khz = trap_frequency_khz;
            return thermal_sigma(c);
        },
        "temperature_uk"_a = 50.0, "trap_frequency_khz"_a = 147.0);

    m.def(
        "ensemble_average_transfer",
        [](const ArrayGeometry& g, const DriveParams& d, const NoiseParams& noise, double temperature_uk,
           int realizations, std::uint64_t seed, int threads) {
            DisorderConfig c;
            c.temperature_uk = temperature_uk;
            c.n_realizations = realizations;
            c.master_seed = seed;
            py::gil_scoped_release release;
            return ensemble_average_transfer(g, d, noise, c, {}, threads);
        },
        "geometry"_a, "drive"_a, "noise"_a = NoiseParams{}, "temperature_uk"_a = 50.0, "realizations"_a = 100,
        "seed"_a = 0, "threads"_a = 1);

    py::class_<GaResult>(m, "GaResult")
        .def_readonly("best_params", &GaResult::best_params)
        .def_readonly("best_fitness", &GaResult::best_fitness)
        .def_readonly("evaluations", &GaResult::evaluations)
        .def_readonly("budget_exhausted", &GaResult::budget_exhausted)
        .def_readonly("ratio_drift", &GaResult::ratio_drift)
        .def_property_readonly("best_history", [](const GaResult& r) {
            std::vector<double> h;
            for (const auto& g : r.history) h.push_back(g.best);
            return h;
        });

    // A Python cost callable keeps the GIL; the built-in transfer cost releases it.
    m.def(
        "ga_optimize",
        [](const DriveParams& preset, const std::function<double(const DriveParams&)>& cost, double fraction,
           int population, int generations, std::uint64_t seed) {
            GaConfig c;
            c.population_size = population;
            c.generations = generations;
            c.seed = seed;
            return ga_optimize(c, make_bounds(preset, fraction), cost, preset, 1);
        },
        "preset"_a, "cost"_a, "fraction"_a = 0.1, "population"_a = 30, "generations"_a = 50, "seed"_a = 0);
    m.def(
        "optimize_transfer",
        [](const ArrayGeometry& g, const DriveParams& preset, const NoiseParams& noise, double fraction,
           int population, int generations, std::uint64_t seed, int threads) {
            GaConfig c;
            c.population_size = population;
            c.generations = generations;
            c.seed = seed;
            CostScenario scenario{g, noise, {}};
            scenario.settings.keep_populations = false;
            py::gil_scoped_release release;
            return ga_optimize(
                c, make_bounds(preset, fraction), [&](const DriveParams& p) { return evaluate_cost(p, scenario); },
                preset, threads);
        },
        "geometry"_a, "preset"_a, "noise"_a = NoiseParams{}, "fraction"_a = 0.1, "population"_a = 30,
        "generations"_a = 50, "seed"_a = 0, "threads"_a = 1);
}
