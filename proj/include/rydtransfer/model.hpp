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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rydtransfer/units.hpp"

namespace rydtransfer {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Which atom pairs interact. `nn_nnn` keeps |j-k| <= 2 only.
enum class InteractionRange { nn_nnn, full };

/// Van der Waals interaction C6/d^6 in MHz. Throws DomainError for d <= 0.
double vdw_pair(double c6, double distance);

/// A 1D chain of N atoms with per-atom longitudinal offsets.
///
/// Atom j sits at nominal position j*r. The distance used for the pair j<k is
/// (k-j)*r + dr_j - dr_k, so a positive offset on the left atom of a pair
/// stretches that pair.
class ArrayGeometry {
   public:
    int size() const { return n_atoms_; }
    double spacing() const { return spacing_; }
    double c6() const { return c6_; }
    InteractionRange range() const { return range_; }
    const std::vector<double>& deviations() const { return deviations_; }

    /// Interaction V_jk in MHz (0-based sites; zero on the diagonal).
    double interaction(int j, int k) const { return interactions_(j, k); }
    const RealMatrix& interactions() const { return interactions_; }

    /// Nominal (undisordered) NN and NNN strengths.
    double nominal_nn() const { return vdw_pair(c6_, spacing_); }
    double nominal_nnn() const { return vdw_pair(c6_, 2.0 * spacing_); }

   private:
    friend ArrayGeometry build_geometry(int, double, double, std::span<const double>, InteractionRange);
    friend ArrayGeometry with_interactions(const ArrayGeometry&, RealMatrix, std::span<const double>);

    int n_atoms_ = 0;
    double spacing_ = 0;
    double c6_ = 0;
    InteractionRange range_ = InteractionRange::nn_nnn;
    std::vector<double> deviations_;
    RealMatrix interactions_;
};

/// Builds the pair table. `deviations` is empty (clean chain) or has N entries.
ArrayGeometry build_geometry(int n_atoms, double spacing = constants::kSpacing, double c6 = constants::kC6,
                             std::span<const double> deviations = {},
                             InteractionRange range = InteractionRange::nn_nnn);

/// Copy of `geom` with an externally computed interaction table (used by the
/// linearized disorder model).
ArrayGeometry with_interactions(const ArrayGeometry& geom, RealMatrix interactions,
                                std::span<const double> deviations);

/// The four global drive numbers, in MHz. Sites 0 and N-1 get (omega0, delta0),
/// the bulk sites 1..N-2 get (omega, delta).
struct DriveParams {
    double omega0 = 0;
    double omega = 0;
    double delta0 = 0;
    double delta = 0;

    double rabi(int site, int n_atoms) const { return is_marginal(site, n_atoms) ? omega0 : omega; }
    double detuning(int site, int n_atoms) const { return is_marginal(site, n_atoms) ? delta0 : delta; }

    /// Non-fatal checks of the off-resonant dressing assumptions.
    std::vector<std::string> warnings(double v_nn) const;

    static bool is_marginal(int site, int n_atoms) { return site == 0 || site == n_atoms - 1; }
    bool operator==(const DriveParams&) const = default;
};

/// Product basis truncated to at most `n_max` Rydberg excitations.
///
/// States are bit patterns (bit j set means atom j is in |r>), ordered by
/// excitation number and then by pattern value, so the vacuum is index 0 and
/// the singly excited states |Phi_j> are indices 1..N.
class BasisSpace {
   public:
    BasisSpace(int n_atoms, int n_max);

    int n_atoms() const { return n_atoms_; }
    int n_max() const { return n_max_; }
    int dimension() const { return static_cast<int>(states_.size()); }
    const std::vector<std::uint32_t>& states() const { return states_; }
    std::uint32_t state(int index) const { return states_[index]; }

    /// Index of a bit pattern, or -1 when it lies outside the truncated space.
    int index_of(std::uint32_t pattern) const;

    /// Index of |Phi_site> (atom `site` excited, 0-based).
    int single(int site) const { return 1 + site; }

    int excitations(int index) const;

   private:
    int n_atoms_;
    int n_max_;
    std::vector<std::uint32_t> states_;
    std::vector<int> lookup_;
};

BasisSpace enumerate_basis(int n_atoms, int n_max);

/// Full Rydberg Hamiltonian in rad/us on the truncated basis:
/// sum_j Omega_j sigma_x^j + sum_j Delta_j n_j + sum_{j<k} V_jk n_j n_k.
/// Flips that would leave the truncated space are dropped.
ComplexMatrix build_hamiltonian(const BasisSpace& space, const ArrayGeometry& geom, const DriveParams& drive);

}  // namespace rydtransfer
