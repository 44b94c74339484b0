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

#include "rydtransfer/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "json.hpp"
#include "rydtransfer/errors.hpp"
#include "rydtransfer/parallel.hpp"

namespace rydtransfer {
namespace {

using Genes = std::array<double, 4>;
using GridKey = std::array<long long, 4>;

GridKey grid_key(const Genes& g, double resolution) {
    GridKey k{};
    for (int i = 0; i < 4; ++i) k[i] = std::llround(g[i] / resolution);
    return k;
}

Genes snap(const Genes& g, const GeneBounds& b, double resolution) {
    Genes out{};
    for (int i = 0; i < 4; ++i) {
        double v = std::clamp(g[i], b.low[i], b.high[i]);
        const double grid = std::round(v / resolution) * resolution;
        // Keep the snapped value inside the box; the grid may straddle an edge.
        out[i] = grid >= b.low[i] && grid <= b.high[i] ? grid : v;
    }
    return out;
}

}  // namespace

bool GeneBounds::contains(const Genes& genes) const {
    for (int i = 0; i < 4; ++i)
        if (genes[i] < low[i] || genes[i] > high[i]) return false;
    return true;
}

std::array<double, 4> to_genes(const DriveParams& d) { return {d.omega0, d.omega, d.delta0, d.delta}; }

DriveParams from_genes(const Genes& g) { return {g[0], g[1], g[2], g[3]}; }

GeneBounds make_bounds(const DriveParams& preset, double fraction) {
    if (!(fraction > 0)) throw DomainError("search fraction must be positive");
    GeneBounds b;
    const Genes g = to_genes(preset);
    for (int i = 0; i < 4; ++i) {
        if (g[i] == 0) throw DomainError("a zero preset value gives an empty search interval");
        const double a = g[i] * (1 - fraction), c = g[i] * (1 + fraction);
        b.low[i] = std::min(a, c);
        b.high[i] = std::max(a, c);
    }
    return b;
}

void GaConfig::validate() const {
    if (population_size < 2) throw DomainError("population must hold at least two individuals");
    if (generations < 1) throw DomainError("at least one generation is required");
    if (tournament_size < 1) throw DomainError("tournament size must be positive");
    if (crossover_rate < 0 || crossover_rate > 1) throw DomainError("crossover rate must lie in [0, 1]");
    if (mutation_rate < 0 || mutation_rate > 1) throw DomainError("mutation rate must lie in [0, 1]");
    if (mutation_scale < 0) throw DomainError("mutation scale must be non-negative");
    if (elitism_count < 0 || elitism_count >= population_size)
        throw DomainError("elitism count must be below the population size");
    if (!(cache_resolution > 0)) throw DomainError("cache resolution must be positive");
}

double evaluate_cost(const DriveParams& params, const CostScenario& scenario) {
    try {
        return simulate_transfer(scenario.geometry, params, scenario.noise, scenario.settings).fidelity;
    } catch (const DomainError&) {
        return 0.0;
    } catch (const NoPeakError&) {
        return 0.0;
    }
}

GaResult ga_optimize(const GaConfig& config, const GeneBounds& bounds, const CostFunction& cost,
                     const DriveParams& preset, int threads) {
    config.validate();
    for (int i = 0; i < 4; ++i)
        if (!(bounds.low[i] < bounds.high[i])) throw DomainError("every gene needs low < high");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double res = config.cache_resolution;
    const auto pop_size = static_cast<std::size_t>(config.population_size);

    std::map<GridKey, double> cache;
    GaResult result;
    result.best_fitness = -std::numeric_limits<double>::infinity();

    // Returns false when the evaluation budget does not cover the generation.
    auto evaluate = [&](const std::vector<Genes>& pop, std::vector<double>& fit) {
        std::vector<GridKey> fresh;
        std::vector<Genes> fresh_genes;
        for (const Genes& g : pop) {
            const GridKey k = grid_key(g, res);
            if (cache.count(k) || std::find(fresh.begin(), fresh.end(), k) != fresh.end()) continue;
            fresh.push_back(k);
            fresh_genes.push_back(g);
        }
        if (config.max_evaluations > 0 && !result.history.empty() &&
            result.evaluations + static_cast<long>(fresh.size()) > config.max_evaluations)
            return false;
        std::vector<double> values(fresh.size());
        parallel_for(fresh.size(), threads, [&](std::size_t i) { values[i] = cost(from_genes(fresh_genes[i])); });
        for (std::size_t i = 0; i < fresh.size(); ++i) cache.emplace(fresh[i], values[i]);
        result.evaluations += static_cast<long>(fresh.size());
        fit.resize(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = cache.at(grid_key(pop[i], res));
        return true;
    };

    std::vector<Genes> pop(pop_size);
    const Genes centre = to_genes(preset);
    for (std::size_t i = 0; i < pop_size; ++i) {
        Genes g{};
        for (int k = 0; k < 4; ++k) g[k] = bounds.low[k] + unit(rng) * (bounds.high[k] - bounds.low[k]);
        pop[i] = snap(i == 0 && bounds.contains(centre) ? centre : g, bounds, res);
    }

    std::vector<double> fit;
    for (int gen = 0; gen < config.generations; ++gen) {
        if (!evaluate(pop, fit)) {
            result.budget_exhausted = true;
            break;
        }
        std::vector<std::size_t> order(pop_size);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });
        if (fit[order[0]] > result.best_fitness) {
            result.best_fitness = fit[order[0]];
            result.best_params = from_genes(pop[order[0]]);
        }
        GenerationRecord rec;
        rec.generation = gen;
        rec.best = result.best_fitness;
        rec.mean = std::accumulate(fit.begin(), fit.end(), 0.0) / static_cast<double>(pop_size);
        rec.best_params = result.best_params;
        result.history.push_back(rec);
        if (gen + 1 == config.generations) break;

        auto tournament = [&]() -> const Genes& {
            std::size_t winner = static_cast<std::size_t>(unit(rng) * pop_size) % pop_size;
            for (int t = 1; t < config.tournament_size; ++t) {
                const std::size_t c = static_cast<std::size_t>(unit(rng) * pop_size) % pop_size;
                if (fit[c] > fit[winner] || (fit[c] == fit[winner] && c < winner)) winner = c;
            }
            return pop[winner];
        };

        std::vector<Genes> next;
        next.reserve(pop_size);
        for (int e = 0; e < config.elitism_count; ++e) next.push_back(pop[order[e]]);
        while (next.size() < pop_size) {
            const Genes& a = tournament();
            const Genes& b = tournament();
            Genes child = a;
            if (unit(rng) < config.crossover_rate) {
                for (int k = 0; k < 4; ++k) {
                    const double w = -0.1 + 1.2 * unit(rng);
                    child[k] = w * a[k] + (1 - w) * b[k];
                }
            }
            for (int k = 0; k < 4; ++k) {
                if (unit(rng) < config.mutation_rate)
                    child[k] += normal(rng) * config.mutation_scale * (bounds.high[k] - bounds.low[k]);
            }
            next.push_back(snap(child, bounds, res));
        }
        pop = std::move(next);
    }

    const double preset_ratio = preset.omega != 0 ? preset.omega0 / preset.omega : 0;
    if (preset_ratio != 0 && result.best_params.omega != 0) {
        const double ratio = result.best_params.omega0 / result.best_params.omega;
        result.ratio_drift = std::abs(ratio / preset_ratio - 1) > 0.15;
    }
    return result;
}

void write_ga_log(std::ostream& out, const GaResult& result) {
    for (const GenerationRecord& r : result.history) {
        nlohmann::ordered_json j;
        j["gen"] = r.generation;
        j["best_F"] = r.best;
        j["mean_F"] = r.mean;
        j["best_params"] = {{"omega0", r.best_params.omega0},
                            {"omega", r.best_params.omega},
                            {"delta0", r.best_params.delta0},
                            {"delta", r.best_params.delta}};
        out << j.dump() << '\n';
    }
}

}  // namespace rydtransfer
