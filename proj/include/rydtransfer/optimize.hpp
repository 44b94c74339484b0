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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rydtransfer/dynamics.hpp"
#include "rydtransfer/model.hpp"

namespace rydtransfer {

/// Search box for the genes (omega0, omega, delta0, delta), MHz.
struct GeneBounds {
    std::array<double, 4> low{};
    std::array<double, 4> high{};

    bool contains(const std::array<double, 4>& genes) const;
};

/// [v(1-f), v(1+f)] per gene with the ends swapped for negative values.
/// Throws DomainError for f <= 0 or a zero preset gene.
GeneBounds make_bounds(const DriveParams& preset, double fraction = 0.10);

std::array<double, 4> to_genes(const DriveParams& d);
DriveParams from_genes(const std::array<double, 4>& g);

struct GaConfig {
    int population_size = 30;
    int generations = 50;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    double mutation_rate = 0.15;
    double mutation_scale = 0.1;  ///< fraction of the box width
    int elitism_count = 2;
    std::uint64_t seed = 0;
    long max_evaluations = 0;      ///< 0 = unlimited
    double cache_resolution = 1e-4;  ///< MHz grid used to deduplicate cost calls

    void validate() const;
};

struct GenerationRecord {
    int generation = 0;
    double best = 0;
    double mean = 0;
    DriveParams best_params;
};

struct GaResult {
    DriveParams best_params;
    double best_fitness = 0;
    std::vector<GenerationRecord> history;
    long evaluations = 0;     ///< distinct cost-function calls
    bool budget_exhausted = false;
    bool ratio_drift = false;  ///< best omega0/omega outside +-15% of the preset ratio
};

/// Scenario the fitness is evaluated in: everything except the drive.
struct CostScenario {
    ArrayGeometry geometry;
    NoiseParams noise;
    TransferSettings settings;
};

/// Peak fidelity of `params`; resonance and missing-peak errors score 0.
double evaluate_cost(const DriveParams& params, const CostScenario& scenario);

using CostFunction = std::function<double(const DriveParams&)>;

/// Generational GA with tournament selection, blend crossover, Gaussian
/// mutation and elitism. Cost calls within a generation run on `threads`
/// workers; the evolution itself is serial and seeded.
GaResult ga_optimize(const GaConfig& config, const GeneBounds& bounds, const CostFunction& cost,
                     const DriveParams& preset, int threads = 1);

/// One JSON object per generation: {gen, best_F, mean_F, best_params}.
void write_ga_log(std::ostream& out, const GaResult& result);

}  // namespace rydtransfer
