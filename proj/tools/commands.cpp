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

#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>

#include "output.hpp"
#include "rydtransfer/effective.hpp"
#include "rydtransfer/errors.hpp"

namespace rydtransfer::cli {
namespace {

Json header(const char* command, const RunOptions& o) { return {{"command", command}, {"config_hash", o.hash}}; }

Json diagnostics_json(const StateDiagnostics& d) {
    return {{"max_trace_drift", d.max_trace_drift},
            {"max_hermiticity", d.max_hermiticity},
            {"min_eigenvalue", d.min_eigenvalue},
            {"max_leakage", d.max_leakage}};
}

Json warnings_json(const ScenarioConfig& c, const ArrayGeometry& g) {
    Json w = Json::array();
    for (const auto& s : c.drive.warnings(g.nominal_nn())) {
        std::cerr << "warning: " << s << '\n';
        w.push_back(s);
    }
    return w;
}

}  // namespace

int cmd_couplings(const ScenarioConfig& c, const RunOptions& o) {
    const ArrayGeometry g = c.geometry();
    const double v = g.nominal_nn(), vp = g.nominal_nnn();
    const EffectiveCouplings k = wc_couplings(c.drive, v, vp, c.n_atoms);
    const WcReduction w = reduce_to_wc(k, c.n_atoms);

    Json j = header("couplings", o);
    j["J0"] = k.j0;
    j["J"] = k.j;
    j["J0p"] = k.j0p;
    j["Jp"] = k.jp;
    j["I"] = k.onsite;
    j["J_W"] = w.j_w;
    j["I_W"] = w.i_w;
    try {
        j["C"] = solve_mod_detuning(c.drive, v, vp, c.n_atoms).ratio;
    } catch (const NoRootError&) {
        j["C"] = nullptr;
    }
    j["Tg_estimate"] = estimate_transfer_time(w.j_w);
    j["warnings"] = warnings_json(c, g);

    const auto dir = prepare_dir(o.out_dir);
    if (c.sweep) {
        std::ofstream csv(dir / "sweep.csv");
        csv << "ratio,J_W,I_W\n" << std::setprecision(12);
        const SweepSpec& s = *c.sweep;
        for (int i = 0; i < s.steps; ++i) {
            const double ratio = s.ratio_min + (s.ratio_max - s.ratio_min) * i / (s.steps - 1);
            DriveParams d = c.drive;
            d.delta0 = ratio * d.delta;
            try {
                const WcReduction r = reduce_to_wc(wc_couplings(d, v, vp, c.n_atoms), c.n_atoms);
                csv << ratio << ',' << r.j_w << ',' << r.i_w << '\n';
            } catch (const ResonanceError&) {
                csv << ratio << ",nan,nan\n";
            }
        }
        j["sweep_csv"] = "sweep.csv";
    }
    write_json(dir / "summary.json", j);
    std::cout << std::setprecision(6) << "J_W = " << w.j_w << " MHz, I_W = " << w.i_w
              << " MHz, T_g estimate = " << j["Tg_estimate"].get<double>() << " us\n";
    return 0;
}

int cmd_transfer(const ScenarioConfig& c, const RunOptions& o) {
    const ArrayGeometry g = c.geometry();
    Json j = header("transfer", o);
    j["warnings"] = warnings_json(c, g);
    const TransferResult r = simulate_transfer(g, c.drive, c.noise, c.dynamics);
    j["F"] = r.fidelity;
    j["T_g_us"] = r.transfer_time;
    j["ideal"] = r.ideal;
    j["window_us"] = r.window;
    j["n_max"] = c.dynamics.n_max;
    j["diagnostics"] = diagnostics_json(r.diagnostics);
    j["trace_csv"] = "trace.csv";
    const auto dir = prepare_dir(o.out_dir);
    std::ofstream csv(dir / "trace.csv");
    write_trace_csv(csv, r.trace);
    write_json(dir / "summary.json", j);
    std::cout << std::setprecision(6) << (r.ideal ? "F0 = " : "F = ") << r.fidelity << " at T_g = " << r.transfer_time
              << " us\n";
    return 0;
}

int cmd_mod(const ScenarioConfig& c, const RunOptions& o) {
    const ArrayGeometry g = c.geometry();
    const ModResult m = solve_mod_detuning(c.drive, g.nominal_nn(), g.nominal_nnn(), c.n_atoms);
    Json j = header("mod", o);
    j["delta0_root"] = m.delta0_root;
    j["C"] = m.ratio;
    j["bracket"] = {m.bracket_low, m.bracket_high};
    j["residual"] = m.residual;
    j["iterations"] = m.iterations;
    write_json(prepare_dir(o.out_dir) / "summary.json", j);
    std::cout << std::setprecision(8) << "Delta0 = " << m.delta0_root << " MHz, C = " << m.ratio << '\n';
    return 0;
}

int cmd_optimize(const ScenarioConfig& c, const RunOptions& o) {
    CostScenario scenario{c.geometry(), c.noise, c.dynamics};
    scenario.settings.keep_populations = false;
    const GeneBounds bounds = make_bounds(c.drive, c.fraction);
    const auto dir = prepare_dir(o.out_dir);

    Json j = header("optimize", o);
    j["bounds"] = {{"low", bounds.low}, {"high", bounds.high}};
    Json runs = Json::array();
    GaResult best;
    best.best_fitness = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < c.ga_restarts; ++k) {
        GaConfig cfg = c.ga;
        cfg.seed = c.ga.seed + static_cast<std::uint64_t>(k);
        const GaResult r = ga_optimize(
            cfg, bounds, [&](const DriveParams& p) { return evaluate_cost(p, scenario); }, c.drive, o.threads);
        const std::string log = "ga_log_seed" + std::to_string(cfg.seed) + ".jsonl";
        std::ofstream out(dir / log);
        write_ga_log(out, r);
        runs.push_back({{"seed", cfg.seed},
                        {"best_F", r.best_fitness},
                        {"best_params", drive_json(r.best_params)},
                        {"evaluations", r.evaluations},
                        {"budget_exhausted", r.budget_exhausted},
                        {"ratio_drift", r.ratio_drift},
                        {"log", log}});
        if (r.ratio_drift) std::cerr << "warning: seed " << cfg.seed << " optimum drifts Omega0/Omega by >15%\n";
        if (r.best_fitness > best.best_fitness) best = r;
        std::cout << std::setprecision(6) << "seed " << cfg.seed << ": F = " << r.best_fitness << '\n';
    }
    j["best_F"] = best.best_fitness;
    j["best_params"] = drive_json(best.best_params);
    j["runs"] = runs;
    write_json(dir / "summary.json", j);
    return 0;
}

int cmd_disorder(const ScenarioConfig& c, const RunOptions& o) {
    const ArrayGeometry g = c.geometry();
    Json j = header("disorder", o);
    TransferSettings s = c.dynamics;
    s.keep_populations = false;
    const TransferResult clean = simulate_transfer(g, c.drive, c.noise, s);
    const DisorderResult r = ensemble_average_transfer(g, c.drive, c.noise, c.disorder, s, o.threads);
    j["mean_F"] = r.mean_fidelity;
    j["std_error"] = r.std_error;
    j["sigma_um"] = r.sigma_um;
    j["interaction_deviation"] = r.interaction_deviation;
    j["n_rejected"] = r.n_rejected;
    j["clean_F"] = clean.fidelity;
    j["T_uK"] = c.disorder.temperature_uk;
    j["realizations"] = c.disorder.n_realizations;
    j["warnings"] = r.warnings;
    const auto dir = prepare_dir(o.out_dir);
    std::ofstream csv(dir / "ensemble.csv");
    write_ensemble_csv(csv, r);
    write_json(dir / "summary.json", j);
    std::cout << std::setprecision(6) << "mean F = " << r.mean_fidelity << " +- " << r.std_error << " (clean "
              << clean.fidelity << ")\n";
    return 0;
}

int cmd_longtime(const ScenarioConfig& c, const RunOptions& o) {
    const ArrayGeometry g = c.geometry();
    const LongTimeResult r =
        long_time_dynamics(g, c.drive, c.noise, c.disorder, c.horizon, c.dynamics, c.samples_per_tg, o.threads);
    Json j = header("longtime", o);
    j["T_g_clean_us"] = r.clean_transfer_time;
    j["sigma_um"] = r.sigma_um;
    j["n_rejected"] = r.n_rejected;
    Json marks = Json::array();
    for (std::size_t k = 0; k < r.marks.size(); ++k)
        marks.push_back({{"k", k + 1}, {"t_us", r.marks[k]}, {"target", r.target_at_marks[k]},
                         {"source", r.source_at_marks[k]}});
    j["marks"] = marks;
    const auto dir = prepare_dir(o.out_dir);
    std::ofstream csv(dir / "trace.csv");
    write_trace_csv(csv, r.mean_trace);
    write_json(dir / "summary.json", j);
    for (std::size_t k = 0; k < r.marks.size(); ++k)
        std::cout << std::setprecision(6) << "t = " << k + 1 << " T_g: target " << r.target_at_marks[k] << ", source "
                  << r.source_at_marks[k] << '\n';
    return 0;
}

}  // namespace rydtransfer::cli
