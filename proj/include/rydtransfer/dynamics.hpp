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

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydtransfer/model.hpp"

namespace rydtransfer {

/// How the dephasing rate is distributed over the chain.
///
/// `collective` uses a single operator sqrt(Gamma/2) sum_j (s_rr^j - s_gg^j),
/// i.e. a common laser phase noise under which a single atom's coherence
/// decays at 2*pi*Gamma. `independent` uses one operator sqrt(Gamma)(s_rr^j -
/// s_gg^j) per atom.
enum class DephasingModel { collective, independent };

struct NoiseParams {
    double dephasing = 0;  ///< Gamma, MHz
    double decay = 0;      ///< gamma, MHz
    DephasingModel dephasing_model = DephasingModel::collective;

    bool ideal() const { return dephasing == 0 && decay == 0; }
};

/// Jump operators in sqrt(rad/us) on the truncated basis.
std::vector<ComplexMatrix> jump_operators(const BasisSpace& space, const NoiseParams& noise);

/// Dense superoperator acting on column-stacked density matrices.
struct Lindbladian {
    ComplexMatrix generator;
    int dim = 0;              ///< Hilbert-space dimension d (generator is d^2 x d^2)
    double max_rate_mhz = 0;  ///< largest |H| entry or total jump rate, linear MHz
};

Lindbladian build_lindbladian(const BasisSpace& space, const ComplexMatrix& h, const NoiseParams& noise);

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

/// Called once per requested time with the sample index and the state.
using StateObserver = std::function<void(std::size_t, const ComplexMatrix&)>;

/// rho(t_k) = exp(L t_k) rho0. Repeated time steps reuse one cached
/// propagator. Throws NumericalInstabilityError when the trace drifts by more
/// than 1e-6.
void propagate(const Lindbladian& l, const ComplexMatrix& rho0, std::span<const double> times,
               const StateObserver& observer);
std::vector<ComplexMatrix> propagate(const Lindbladian& l, const ComplexMatrix& rho0, std::span<const double> times);

/// Classical RK4 on the matrix form of the master equation. A non-positive
/// `step` selects 1/(200 nu_max).
void propagate_rk4(const ComplexMatrix& h, std::span<const ComplexMatrix> jumps, const ComplexMatrix& rho0,
                   std::span<const double> times, const StateObserver& observer, double step = 0);

/// Worst-case physicality figures over all sampled states.
struct StateDiagnostics {
    double max_trace_drift = 0;
    double max_hermiticity = 0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
    double max_leakage = 0;  ///< population with two or more excitations

    void absorb(const ComplexMatrix& rho, const BasisSpace& space);
    void merge(const StateDiagnostics& other);
};

struct FidelityTrace {
    std::vector<double> times;
    std::vector<double> fidelity;
    RealMatrix populations;  ///< rows are times, columns are |Phi_1>..|Phi_N>
};

/// Target-site population along the propagated states. `target` is 0-based.
FidelityTrace fidelity_trace(std::span<const ComplexMatrix> states, std::span<const double> times,
                             const BasisSpace& space, int target);

struct Peak {
    double fidelity = 0;
    double time = 0;
    std::size_t index = 0;  ///< bracketing sample
};

/// First local maximum whose drop on both sides (to the nearest higher sample
/// or the end of the trace) is at least max(0.05, 0.2 F), refined by a
/// parabola through the three surrounding samples. Throws NoPeakError.
Peak first_peak(std::span<const double> times, std::span<const double> values);
Peak first_peak(const FidelityTrace& trace);

enum class Propagator { exponential, rk4 };

struct TransferSettings {
    int n_max = 2;
    std::optional<double> t_max;  ///< us; default from the effective-model estimate
    int n_samples = 2000;
    Propagator method = Propagator::exponential;
    int max_doublings = 3;         ///< default window only
    std::optional<int> target;     ///< 0-based; default N-1
    bool keep_populations = true;
};

struct TransferResult {
    double fidelity = 0;
    double transfer_time = 0;
    FidelityTrace trace;
    bool ideal = false;
    double window = 0;
    StateDiagnostics diagnostics;
};

/// Uniform grid of n points on [0, t_max].
std::vector<double> time_grid(double t_max, int n_samples);

/// Populations of |Phi_j> and all diagnostics for rho0 = |Phi_1><Phi_1| on the
/// given grid (no peak search).
FidelityTrace evolve_trace(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise,
                           int n_max, std::span<const double> times, int target, StateDiagnostics* diagnostics,
                           Propagator method = Propagator::exponential);

TransferResult simulate_transfer(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise,
                                 const TransferSettings& settings = {});

/// CSV with header t_us,fidelity,pop_1..pop_N at 12 significant digits.
void write_trace_csv(std::ostream& out, const FidelityTrace& trace);

}  // namespace rydtransfer
