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

#include "rydtransfer/model.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "rydtransfer/errors.hpp"

namespace rydtransfer {

double vdw_pair(double c6, double distance) {
    if (!(distance > 0)) {
        std::ostringstream msg;
        msg << "non-positive interatomic distance " << distance << " um (colliding atoms)";
        throw DomainError(msg.str());
    }
    const double d2 = distance * distance;
    return c6 / (d2 * d2 * d2);
}

ArrayGeometry build_geometry(int n_atoms, double spacing, double c6, std::span<const double> deviations,
                             InteractionRange range) {
    if (n_atoms < 4) throw DomainError("array needs at least 4 atoms");
    if (!(spacing > 0)) throw DomainError("spacing must be positive");
    if (!deviations.empty() && static_cast<int>(deviations.size()) != n_atoms)
        throw DomainError("deviations must be empty or have one entry per atom");

    ArrayGeometry g;
    g.n_atoms_ = n_atoms;
    g.spacing_ = spacing;
    g.c6_ = c6;
    g.range_ = range;
    g.deviations_.assign(n_atoms, 0.0);
    if (!deviations.empty()) g.deviations_.assign(deviations.begin(), deviations.end());

    g.interactions_ = RealMatrix::Zero(n_atoms, n_atoms);
    for (int j = 0; j < n_atoms; ++j) {
        for (int k = j + 1; k < n_atoms; ++k) {
            if (range == InteractionRange::nn_nnn && k - j > 2) continue;
            const double d = (k - j) * spacing + g.deviations_[j] - g.deviations_[k];
            if (!(d > 0)) {
                std::ostringstream msg;
                msg << "atoms " << j << " and " << k << " collide (distance " << d << " um)";
                throw DomainError(msg.str());
            }
            const double v = vdw_pair(c6, d);
            g.interactions_(j, k) = v;
            g.interactions_(k, j) = v;
        }
    }
    return g;
}

ArrayGeometry with_interactions(const ArrayGeometry& geom, RealMatrix interactions,
                                std::span<const double> deviations) {
    ArrayGeometry g = geom;
    g.interactions_ = std::move(interactions);
    g.deviations_.assign(deviations.begin(), deviations.end());
    return g;
}

std::vector<std::string> DriveParams::warnings(double v_nn) const {
    std::vector<std::string> out;
    if (std::abs(delta) < 10 * std::abs(omega))
        out.emplace_back("|delta| < 10*omega: bulk atoms are not far off resonance");
    if (std::abs(delta0) < 10 * std::abs(omega0))
        out.emplace_back("|delta0| < 10*omega0: marginal atoms are not far off resonance");
    const double near = 5 * std::abs(omega);
    if (std::abs(delta0 + v_nn) < near || std::abs(delta + v_nn) < near)
        out.emplace_back("detuning close to the facilitation resonance delta + V_NN = 0");
    return out;
}

BasisSpace::BasisSpace(int n_atoms, int n_max) : n_atoms_(n_atoms), n_max_(n_max) {
    if (n_atoms < 1 || n_atoms > 24) throw DomainError("unsupported atom count for the product basis");
    if (n_max < 1 || n_max > n_atoms) throw DomainError("n_max must lie in [1, N]");
    const std::uint32_t full = 1u << n_atoms;
    lookup_.assign(full, -1);
    for (int k = 0; k <= n_max; ++k) {
        for (std::uint32_t s = 0; s < full; ++s) {
            if (std::popcount(s) != k) continue;
            lookup_[s] = static_cast<int>(states_.size());
            states_.push_back(s);
        }
    }
}

int BasisSpace::index_of(std::uint32_t pattern) const {
    if (pattern >= lookup_.size()) return -1;
    return lookup_[pattern];
}

int BasisSpace::excitations(int index) const { return std::popcount(states_[index]); }

BasisSpace enumerate_basis(int n_atoms, int n_max) { return BasisSpace(n_atoms, n_max); }

ComplexMatrix build_hamiltonian(const BasisSpace& space, const ArrayGeometry& geom, const DriveParams& drive) {
    const int n = space.n_atoms();
    if (n != geom.size()) throw DomainError("basis and geometry disagree on the atom count");
    const int dim = space.dimension();
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        const std::uint32_t s = space.state(a);
        double diag = 0;
        for (int j = 0; j < n; ++j) {
            if (!(s >> j & 1u)) continue;
            diag += drive.detuning(j, n);
            for (int k = j + 1; k < n; ++k)
                if (s >> k & 1u) diag += geom.interaction(j, k);
        }
        h(a, a) = angular(diag);
        for (int j = 0; j < n; ++j) {
            const int b = space.index_of(s ^ (1u << j));
            if (b >= 0) h(a, b) = angular(drive.rabi(j, n));
        }
    }
    return h;
}

}  // namespace rydtransfer
