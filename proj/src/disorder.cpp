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

#include "rydtransfer/disorder.hpp"

#include <cmath>
#include <ostream>
#include <iomanip>
#include <sstream>

#include "rydtransfer/errors.hpp"
#include "rydtransfer/parallel.hpp"

namespace rydtransfer {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on (0, 1].
double unit_interval(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53; }

}  // namespace

double thermal_sigma(const DisorderConfig& config) {
    if (config.temperature_uk < 0) throw DomainError("temperature must be non-negative");
    if (!(config.trap_frequency_khz > 0)) throw DomainError("trap frequency must be positive");
    if (!(config.atom_mass_u > 0)) throw DomainError("atom mass must be positive");
    const double temperature = config.temperature_uk * 1e-6;
    const double omega = kTwoPi * config.trap_frequency_khz * 1e3;
    const double mass = config.atom_mass_u * constants::kAtomicMassUnit;
    return std::sqrt(constants::kBoltzmann * temperature / (mass * omega * omega)) * 1e6;
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t attempt) {
    return splitmix64(splitmix64(splitmix64(master_seed) ^ realization) ^ (attempt * 0x632be59bd9b4e019ULL));
}

double gaussian_draw(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t atom,
                     std::uint64_t attempt) {
    const std::uint64_t key = splitmix64(realization_seed(master_seed, realization, attempt) ^ atom);
    const double u1 = unit_interval(splitmix64(key));
    const double u2 = unit_interval(splitmix64(key ^ 0xd1b54a32d192ed03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::vector<double> sample_deviations(double sigma, int n_atoms, std::uint64_t master_seed,
                                      std::uint64_t realization, std::uint64_t attempt) {
    if (sigma < 0) throw DomainError("sigma must be non-negative");
    std::vector<double> out(n_atoms, 0.0);
    if (sigma == 0) return out;
    for (int j = 0; j < n_atoms; ++j)
        out[j] = sigma * gaussian_draw(master_seed, realization, static_cast<std::uint64_t>(j), attempt);
    return out;
}

ArrayGeometry fluctuated_interactions(const ArrayGeometry& geom, std::span<const double> deviations,
                                      InteractionMode mode, std::uint64_t seed) {
    const int n = geom.size();
    if (static_cast<int>(deviations.size()) != n) throw DomainError("one deviation per atom is required");
    std::vector<double> total(n);
    for (int j = 0; j < n; ++j) total[j] = geom.deviations()[j] + deviations[j];

    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            if (geom.range() == InteractionRange::nn_nnn && k - j > 2) continue;
            const double d = (k - j) * geom.spacing() + total[j] - total[k];
            if (!(d > 0)) {
                std::ostringstream msg;
                msg << "atoms " << j << " and " << k << " collide (distance " << d << " um)";
                throw CollisionError(msg.str(), seed);
            }
        }
    }
    if (mode == InteractionMode::exact_distance)
        return build_geometry(n, geom.spacing(), geom.c6(), total, geom.range());

    // First-order expansion V(d0 + e) = V(d0) - 6 C6 / d0^7 e around the clean distances.
    RealMatrix v = RealMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            if (geom.range() == InteractionRange::nn_nnn && k - j > 2) continue;
            const double d0 = (k - j) * geom.spacing();
            const double slope = 6.0 * geom.c6() / std::pow(d0, 7);
            v(j, k) = vdw_pair(geom.c6(), d0) - slope * (total[j] - total[k]);
            v(k, j) = v(j, k);
        }
    }
    return with_interactions(geom, std::move(v), total);
}

DisorderResult ensemble_average_transfer(const ArrayGeometry& geom, const DriveParams& drive,
                                         const NoiseParams& noise, const DisorderConfig& disorder,
                                         const TransferSettings& settings, int threads) {
    if (disorder.n_realizations < 1) throw DomainError("at least one realization is required");
    DisorderResult r;
    r.sigma_um = thermal_sigma(disorder);
    r.interaction_deviation = 6.0 * r.sigma_um / geom.spacing();
    if (r.sigma_um >= geom.spacing() / 3)
        r.warnings.emplace_back("sigma exceeds r/3: the perturbative disorder picture no longer holds");

    TransferSettings quiet = settings;
    quiet.keep_populations = false;
    const auto count = static_cast<std::size_t>(disorder.n_realizations);
    r.per_realization.resize(count);
    std::vector<int> rejected(count, 0);
    std::vector<StateDiagnostics> diag(count);

    parallel_for(count, threads, [&](std::size_t i) {
        for (int attempt = 0;; ++attempt) {
            const std::uint64_t seed = realization_seed(disorder.master_seed, i, static_cast<std::uint64_t>(attempt));
            const std::vector<double> dev =
                sample_deviations(r.sigma_um, geom.size(), disorder.master_seed, i, attempt);
            ArrayGeometry g;
            try {
                g = fluctuated_interactions(geom, dev, disorder.mode, seed);
            } catch (const CollisionError&) {
                ++rejected[i];
                if (attempt >= disorder.max_resamples) throw;
                continue;
            }
            const TransferResult t = simulate_transfer(g, drive, noise, quiet);
            r.per_realization[i] = {static_cast<int>(i), seed, t.fidelity, t.transfer_time};
            diag[i] = t.diagnostics;
            return;
        }
    });

    double sum = 0;
    for (std::size_t i = 0; i < count; ++i) {
        sum += r.per_realization[i].fidelity;
        r.n_rejected += rejected[i];
        r.diagnostics.merge(diag[i]);
    }
    const double n = static_cast<double>(count);
    r.mean_fidelity = sum / n;
    if (count > 1) {
        double ss = 0;
        for (const auto& o : r.per_realization) ss += (o.fidelity - r.mean_fidelity) * (o.fidelity - r.mean_fidelity);
        r.std_error = std::sqrt(ss / (n - 1)) / std::sqrt(n);
    }
    return r;
}

LongTimeResult long_time_dynamics(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise,
                                  const DisorderConfig& disorder, int horizon, const TransferSettings& settings,
                                  int samples_per_tg, int threads) {
    if (horizon < 1) throw DomainError("horizon must be at least one transfer time");
    if (samples_per_tg < 2) throw DomainError("need at least two samples per transfer time");
    if (disorder.n_realizations < 1) throw DomainError("at least one realization is required");

    LongTimeResult out;
    TransferSettings clean_settings = settings;
    clean_settings.keep_populations = false;
    const TransferResult clean = simulate_transfer(geom, drive, noise, clean_settings);
    out.clean_transfer_time = clean.transfer_time;
    out.diagnostics = clean.diagnostics;
    out.sigma_um = thermal_sigma(disorder);

    const int intervals = horizon * samples_per_tg;
    std::vector<double> times(intervals + 1);
    for (int k = 0; k <= intervals; ++k) times[k] = clean.transfer_time * k / samples_per_tg;

    const int n = geom.size();
    const int target = settings.target.value_or(n - 1);
    const auto count = static_cast<std::size_t>(disorder.n_realizations);
    std::vector<RealMatrix> pops(count);
    std::vector<int> rejected(count, 0);
    std::vector<StateDiagnostics> diag(count);
    parallel_for(count, threads, [&](std::size_t i) {
        for (int attempt = 0;; ++attempt) {
            const std::uint64_t seed = realization_seed(disorder.master_seed, i, static_cast<std::uint64_t>(attempt));
            const std::vector<double> dev = sample_deviations(out.sigma_um, n, disorder.master_seed, i, attempt);
            ArrayGeometry g;
            try {
                g = fluctuated_interactions(geom, dev, disorder.mode, seed);
            } catch (const CollisionError&) {
                ++rejected[i];
                if (attempt >= disorder.max_resamples) throw;
                continue;
            }
            pops[i] = evolve_trace(g, drive, noise, settings.n_max, times, target, &diag[i], settings.method)
                          .populations;
            return;
        }
    });

    RealMatrix mean = RealMatrix::Zero(intervals + 1, n);
    for (std::size_t i = 0; i < count; ++i) {
        mean += pops[i];
        out.n_rejected += rejected[i];
        out.diagnostics.merge(diag[i]);
    }
    mean /= static_cast<double>(count);

    out.mean_trace.times = times;
    out.mean_trace.fidelity.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) out.mean_trace.fidelity[k] = mean(static_cast<Eigen::Index>(k), target);
    out.mean_trace.populations = std::move(mean);
    for (int m = 1; m <= horizon; ++m) {
        const Eigen::Index row = static_cast<Eigen::Index>(m) * samples_per_tg;
        out.marks.push_back(times[row]);
        out.target_at_marks.push_back(out.mean_trace.populations(row, target));
        out.source_at_marks.push_back(out.mean_trace.populations(row, 0));
    }
    return out;
}

void write_ensemble_csv(std::ostream& out, const DisorderResult& result) {
    out << "realization,seed,F,T_g_us\n" << std::setprecision(12);
    for (const auto& o : result.per_realization)
        out << o.index << ',' << o.seed << ',' << o.fidelity << ',' << o.transfer_time << '\n';
}

}  // namespace rydtransfer
