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

// rydtransfer command-line front end.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "rydtransfer/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3 };

}  // namespace

int main(int argc, char** argv) {
    using namespace rydtransfer;
    using namespace rydtransfer::cli;

    CLI::App app{"Excitation transport in Rydberg-dressed atom chains"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    RunOptions run;
    std::optional<std::uint64_t> seed;
    std::optional<int> n_max;
    std::optional<double> fraction;
    std::optional<int> realizations;
    app.add_option("--out", run.out_dir, "Output directory")->capture_default_str();
    app.add_option("--threads", run.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--seed", seed, "Override the GA and disorder seeds");
    app.add_option("--n-max", n_max, "Excitation-number truncation");
    app.add_option("--fraction", fraction, "GA search box half-width as a fraction of the preset");
    app.add_option("--realizations", realizations, "Disorder realizations");

    struct Scenario {
        const char* name;
        const char* help;
        int (*fn)(const ScenarioConfig&, const RunOptions&);
    };
    const Scenario scenarios[] = {
        {"couplings", "Effective couplings and the optional Delta0/Delta sweep", cmd_couplings},
        {"transfer", "Full master-equation transfer: peak fidelity and trace", cmd_transfer},
        {"mod", "Marginal detuning that cancels I_W", cmd_mod},
        {"optimize", "Genetic-algorithm search around the configured drive", cmd_optimize},
        {"disorder", "Thermal position disorder ensemble", cmd_disorder},
        {"longtime", "Disorder-averaged long-time dynamics", cmd_longtime},
    };
    std::vector<std::pair<CLI::App*, const Scenario*>> subs;
    for (const Scenario& s : scenarios) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", config_path, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
        subs.emplace_back(sub, &s);
    }

    std::string target;
    ReproduceOptions repro;
    CLI::App* reproduce = app.add_subcommand("reproduce", "Recompute a published table or figure");
    reproduce->add_option("target", target, "table1, table2, fig1b, fig4 or fig5")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "fig1b", "fig4", "fig5"}));
    reproduce->add_option("--max-atoms", repro.max_atoms, "Largest chain in the disorder panels")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    std::ostringstream overrides;
    try {
        if (reproduce->parsed()) {
            if (n_max) repro.n_max = *n_max;
            if (realizations) repro.realizations = *realizations;
            if (seed) repro.seed = *seed;
            overrides << "reproduce " << target << ' ' << repro.n_max << ' ' << repro.realizations << ' '
                      << repro.seed << ' ' << repro.max_atoms;
            run.hash = fnv1a_hex(overrides.str());
            return cmd_reproduce(target, repro, run);
        }
        for (const auto& [sub, s] : subs) {
            if (!sub->parsed()) continue;
            ScenarioConfig c = load_config(config_path);
            if (seed) {
                c.ga.seed = *seed;
                c.disorder.master_seed = *seed;
            }
            if (n_max) c.dynamics.n_max = *n_max;
            if (fraction) c.fraction = *fraction;
            if (realizations) c.disorder.n_realizations = *realizations;
            if (c.dynamics.n_max < 1 || c.dynamics.n_max > c.n_atoms) throw ConfigError("--n-max must lie in [1, N]");
            if (!(c.fraction > 0)) throw ConfigError("--fraction must be positive");
            if (c.disorder.n_realizations < 1) throw ConfigError("--realizations must be at least 1");
            overrides << s->name << ' ' << c.ga.seed << ' ' << c.disorder.master_seed << ' ' << c.dynamics.n_max << ' '
                      << c.fraction << ' ' << c.disorder.n_realizations;
            run.hash = fnv1a_hex(c.text + '\n' + overrides.str());
            return s->fn(c, run);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const NoPeakError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NoRootError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalInstabilityError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
