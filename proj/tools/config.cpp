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

#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rydtransfer::cli {
namespace {

std::string where(const std::string& origin, const YAML::Node& node) {
    std::ostringstream s;
    s << origin;
    if (node.Mark().line >= 0) s << ':' << node.Mark().line + 1;
    return s.str();
}

using Handler = std::function<void(const YAML::Node&)>;

// Visits every key of a block; keys without a handler are rejected.
void visit_block(const YAML::Node& block, const std::string& name, const std::string& origin,
                 const std::map<std::string, Handler>& handlers) {
    if (!block.IsMap()) throw ConfigError(where(origin, block) + ": block '" + name + "' must be a mapping");
    for (const auto& kv : block) {
        const std::string key = kv.first.as<std::string>();
        auto it = handlers.find(key);
        if (it == handlers.end())
            throw ConfigError(where(origin, kv.first) + ": unknown key '" + key + "' in " +
                              (name.empty() ? std::string("top level") : "block '" + name + "'"));
        try {
            it->second(kv.second);
        } catch (const YAML::BadConversion&) {
            throw ConfigError(where(origin, kv.second) + ": bad value for '" + key + "'");
        }
    }
}

template <typename T>
Handler into(T& target) {
    return [&target](const YAML::Node& n) { target = n.as<T>(); };
}

template <typename Enum>
Handler choice(Enum& target, const std::map<std::string, Enum>& names, const std::string& origin) {
    return [&target, names, origin](const YAML::Node& n) {
        const std::string v = n.as<std::string>();
        auto it = names.find(v);
        if (it == names.end()) throw ConfigError(where(origin, n) + ": unsupported value '" + v + "'");
        target = it->second;
    };
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

ArrayGeometry ScenarioConfig::geometry() const { return build_geometry(n_atoms, r_um, c6, {}, range); }

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    ScenarioConfig c;
    c.text = text;
    if (!root.IsMap()) throw ConfigError(origin + ": scenario file must be a mapping");

    bool have_drive = false;
    double t_max = 0;
    bool have_t_max = false;
    std::string method = "exponential";
    SweepSpec sweep;
    bool have_sweep = false;

    std::map<std::string, Handler> top;
    top["schema_version"] = into(c.schema_version);
    top["geometry"] = [&](const YAML::Node& b) {
        visit_block(b, "geometry", origin,
                    {{"N", into(c.n_atoms)},
                     {"r_um", into(c.r_um)},
                     {"C6", into(c.c6)},
                     {"range", choice(c.range, {{"nn_nnn", InteractionRange::nn_nnn}, {"full", InteractionRange::full}},
                                      origin)}});
    };
    top["drive"] = [&](const YAML::Node& b) {
        have_drive = true;
        visit_block(b, "drive", origin,
                    {{"omega0", into(c.drive.omega0)},
                     {"omega", into(c.drive.omega)},
                     {"delta0", into(c.drive.delta0)},
                     {"delta", into(c.drive.delta)}});
    };
    top["noise"] = [&](const YAML::Node& b) {
        visit_block(b, "noise", origin,
                    {{"Gamma", into(c.noise.dephasing)},
                     {"gamma", into(c.noise.decay)},
                     {"dephasing_model",
                      choice(c.noise.dephasing_model,
                             {{"collective", DephasingModel::collective}, {"independent", DephasingModel::independent}},
                             origin)}});
    };
    top["dynamics"] = [&](const YAML::Node& b) {
        visit_block(b, "dynamics", origin,
                    {{"n_max", into(c.dynamics.n_max)},
                     {"t_max_us",
                      [&](const YAML::Node& n) {
                          t_max = n.as<double>();
                          have_t_max = true;
                      }},
                     {"n_samples", into(c.dynamics.n_samples)},
                     {"method", into(method)}});
    };
    top["disorder"] = [&](const YAML::Node& b) {
        visit_block(b, "disorder", origin,
                    {{"T_uK", into(c.disorder.temperature_uk)},
                     {"trap_kHz", into(c.disorder.trap_frequency_khz)},
                     {"mass_u", into(c.disorder.atom_mass_u)},
                     {"realizations", into(c.disorder.n_realizations)},
                     {"seed", into(c.disorder.master_seed)},
                     {"mode", choice(c.disorder.mode,
                                     {{"exact_distance", InteractionMode::exact_distance},
                                      {"linearized", InteractionMode::linearized}},
                                     origin)},
                     {"horizon", into(c.horizon)},
                     {"samples_per_tg", into(c.samples_per_tg)}});
    };
    top["ga"] = [&](const YAML::Node& b) {
        visit_block(b, "ga", origin,
                    {{"population", into(c.ga.population_size)},
                     {"generations", into(c.ga.generations)},
                     {"tournament", into(c.ga.tournament_size)},
                     {"crossover_rate", into(c.ga.crossover_rate)},
                     {"mutation_rate", into(c.ga.mutation_rate)},
                     {"mutation_scale", into(c.ga.mutation_scale)},
                     {"elitism", into(c.ga.elitism_count)},
                     {"seed", into(c.ga.seed)},
                     {"max_evaluations", into(c.ga.max_evaluations)},
                     {"fraction", into(c.fraction)},
                     {"restarts", into(c.ga_restarts)}});
    };
    top["sweep"] = [&](const YAML::Node& b) {
        have_sweep = true;
        visit_block(b, "sweep", origin,
                    {{"ratio_min", into(sweep.ratio_min)},
                     {"ratio_max", into(sweep.ratio_max)},
                     {"steps", into(sweep.steps)}});
    };
    visit_block(root, "", origin, top);

    require(c.schema_version == 1, origin + ": unsupported schema_version " + std::to_string(c.schema_version));
    require(have_drive, origin + ": missing required block 'drive'");
    require(c.n_atoms >= 4 && c.n_atoms <= 16, origin + ": geometry.N must lie in [4, 16]");
    require(c.r_um > 0 && c.c6 > 0, origin + ": geometry.r_um and geometry.C6 must be positive");
    require(c.noise.dephasing >= 0 && c.noise.decay >= 0, origin + ": noise rates must be non-negative");
    require(c.dynamics.n_max >= 1 && c.dynamics.n_max <= c.n_atoms, origin + ": dynamics.n_max must lie in [1, N]");
    require(c.dynamics.n_samples >= 3, origin + ": dynamics.n_samples must be at least 3");
    if (have_t_max) {
        require(t_max > 0, origin + ": dynamics.t_max_us must be positive (zero-length window)");
        c.dynamics.t_max = t_max;
    }
    if (method == "exponential")
        c.dynamics.method = Propagator::exponential;
    else if (method == "rk4")
        c.dynamics.method = Propagator::rk4;
    else
        throw ConfigError(origin + ": dynamics.method must be 'exponential' or 'rk4'");
    require(c.disorder.temperature_uk >= 0, origin + ": disorder.T_uK must be non-negative");
    require(c.disorder.trap_frequency_khz > 0 && c.disorder.atom_mass_u > 0,
            origin + ": disorder.trap_kHz and disorder.mass_u must be positive");
    require(c.disorder.n_realizations >= 1, origin + ": disorder.realizations must be at least 1");
    require(c.horizon >= 1 && c.samples_per_tg >= 2, origin + ": disorder.horizon >= 1 and samples_per_tg >= 2");
    require(c.fraction > 0, origin + ": ga.fraction must be positive");
    require(c.ga_restarts >= 1, origin + ": ga.restarts must be at least 1");
    try {
        c.ga.validate();
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": ga: " + e.what());
    }
    if (have_sweep) {
        require(sweep.steps >= 2 && sweep.ratio_max > sweep.ratio_min,
                origin + ": sweep needs steps >= 2 and ratio_max > ratio_min");
        c.sweep = sweep;
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace rydtransfer::cli
