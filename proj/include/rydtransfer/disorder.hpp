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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rydtransfer/dynamics.hpp"
#include "rydtransfer/model.hpp"
#include "rydtransfer/units.hpp"

namespace rydtransfer {

enum class InteractionMode { exact_distance, linearized };

struct DisorderConfig {
    double temperature_uk = 50;   ///< T, microkelvin
    double trap_frequency_khz = 147;  ///< omega / 2pi, kHz
    double atom_mass_u = constants::kRb87MassU;
    int n_realizations = 100;
    std::uint64_t master_seed = 0;
    InteractionMode mode = InteractionMode::exact_distance;
    int max_resamples = 10;
};

/// Thermal position spread sqrt(k_B T / (m omega^2)) in um.
double thermal_sigma(const DisorderConfig& config);

/// Gaussian draw for (master_seed, realization, atom, attempt). Stateless, so
/// any realization can be regenerated in isolation.
double gaussian_draw(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t atom, std::uint64_t attempt);

/// Seed label reported for a realization attempt.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t attempt);

std::vector<double> sample_deviations(double sigma, int n_atoms, std::uint64_t master_seed,
                                      std::uint64_t realization, std::uint64_t attempt = 0);

/// Geometry with disordered interactions. Throws CollisionError carrying
/// `seed` when a pair distance is not positive (exact mode).
ArrayGeometry fluctuated_interactions(const ArrayGeometry& geom, std::span<const double> deviations,
                                      InteractionMode mode, std::uint64_t seed = 0);

struct RealizationOutcome {
    int index = 0;
    std::uint64_t seed = 0;
    double fidelity = 0;
    double transfer_time = 0;
};

struct DisorderResult {
    double mean_fidelity = 0;
    double std_error = 0;
    std::vector<RealizationOutcome> per_realization;
    double sigma_um = 0;
    double interaction_deviation = 0;  ///< 6 sigma / r
    int n_rejected = 0;
    std::vector<std::string> warnings;
    StateDiagnostics diagnostics;  ///< worst case over all realizations
};

DisorderResult ensemble_average_transfer(const ArrayGeometry& geom, const DriveParams& drive,
                                         const NoiseParams& noise, const DisorderConfig& disorder,
                                         const TransferSettings& settings = {}, int threads = 1);

struct LongTimeResult {
    double clean_transfer_time = 0;  ///< T_g from the disorder-free run
    FidelityTrace mean_trace;        ///< realization-averaged populations
    std::vector<double> marks;       ///< k T_g, k = 1..horizon
    std::vector<double> target_at_marks;
    std::vector<double> source_at_marks;
    double sigma_um = 0;
    int n_rejected = 0;
    StateDiagnostics diagnostics;  ///< worst case over all realizations
};

/// Averaged trace on [0, horizon T_g] with T_g taken from the clean run. The
/// grid has `samples_per_tg` intervals per T_g so every mark is a sample.
LongTimeResult long_time_dynamics(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise,
                                  const DisorderConfig& disorder, int horizon, const TransferSettings& settings = {},
                                  int samples_per_tg = 200, int threads = 1);

void write_ensemble_csv(std::ostream& out, const DisorderResult& result);

}  // namespace rydtransfer
