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

#include <optional>
#include <span>
#include <vector>

#include "rydtransfer/model.hpp"

namespace rydtransfer {

enum class CouplingVariant { weak_coupling, uniform };

/// Second-order exchange and on-site couplings of the single-excitation
/// manifold, in MHz.
struct EffectiveCouplings {
    double j0 = 0;   ///< marginal NN exchange J_{12} = J_{N-1,N}
    double j = 0;    ///< bulk NN exchange
    double j0p = 0;  ///< marginal NNN exchange J_{13} = J_{N-2,N}
    double jp = 0;   ///< bulk NNN exchange
    std::vector<double> onsite;  ///< I_1..I_N
    CouplingVariant variant = CouplingVariant::weak_coupling;
};

/// Couplings for a marginal/bulk drive (Omega0, Delta0 on the end atoms).
/// Throws ResonanceError when any of Delta0, Delta, Delta0+V, Delta+V (for
/// V = V_NN and V_NNN) is within 1e-6 MHz of zero.
EffectiveCouplings wc_couplings(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms);

/// Same formulas with every Rabi frequency set to the bulk value Omega.
EffectiveCouplings uniform_couplings(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms);

/// On-site potential of |Phi_j> for arbitrary per-site drives:
/// I_j = D_j + 2 W_j^2/D_j + sum_{|k-j|=1} W_k^2 V/(D_k(D_k+V)) + sum_{|k-j|=2} (V -> V_NNN).
double onsite_potential(int site, std::span<const double> rabi, std::span<const double> detuning, double v_nn,
                        double v_nnn);

/// N x N effective Hamiltonian over the singly excited states (MHz).
RealMatrix local_effective_hamiltonian(const EffectiveCouplings& c, int n_atoms);

/// The strong-exchange part H_0 (end states shifted by 2J), N x N.
RealMatrix h0_matrix(double j, int n_atoms);

/// Bulk block M of H_0, (N-2) x (N-2).
RealMatrix h0_reduced(double j, int n_atoms);

/// Closed-form eigenvalues 2J cos[(p-1) pi/(N-2)], p = 1..N-2.
std::vector<double> h0_spectrum(double j, int n_atoms);

/// Uniform bulk superposition |Phi_m> as an N-vector over |Phi_1..N>.
Eigen::VectorXd zeno_bulk_state(int n_atoms);

/// Three-level reduction on {|Phi_1>, |Phi_m>, |Phi_N>}.
struct WcReduction {
    double j_w = 0;
    double i_w = 0;
    Eigen::Matrix3d h_wc = Eigen::Matrix3d::Zero();
    int n_atoms = 0;
};

WcReduction reduce_to_wc(const EffectiveCouplings& c, int n_atoms);

/// One-way transfer time of the resonant three-level model, 1/(2 sqrt2 |J_W|) us.
double estimate_transfer_time(double j_w);

/// Transfer time of the detuned (|I_W| >> |J_W|) second-order regime, |I_W|/(4 J_W^2) us.
double second_order_transfer_time(double j_w, double i_w);

/// Window heuristic shared by the dynamics and optimisation layers.
double default_window(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms);

struct ModOptions {
    double ratio_low = 0.9;
    double ratio_high = 1.2;
    double scan_step = 0.005;       ///< ratio step of the outward bracket scan
    double bracket_tolerance = 1e-6;  ///< MHz
    double residual_tolerance = 1e-8;  ///< MHz
};

struct ModResult {
    double delta0_root = 0;
    double ratio = 0;
    double bracket_low = 0;
    double bracket_high = 0;
    double residual = 0;
    int iterations = 0;
};

/// Finds the marginal detuning that zeroes I_W with everything else fixed
/// (drive.delta0 is ignored). Throws NoRootError without a sign change.
ModResult solve_mod_detuning(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms,
                             const ModOptions& options = {});

/// Closed-system populations |<k|exp(-i 2pi H t)|psi0>|^2 for a small
/// Hermitian H in MHz. Rows are times, columns basis states.
RealMatrix propagate_effective(const ComplexMatrix& h_mhz, const ComplexVector& psi0, std::span<const double> times);

}  // namespace rydtransfer
