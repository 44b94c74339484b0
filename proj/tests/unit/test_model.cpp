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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "rydtransfer/errors.hpp"
#include "rydtransfer/model.hpp"

using namespace rydtransfer;

TEST(vdw_pair, published_nn_and_nnn) {
    EXPECT_NEAR(vdw_pair(1.416e6, 3.76), 501.1, 0.05);
    EXPECT_NEAR(vdw_pair(1.416e6, 7.52), 7.83, 0.005);
}

TEST(vdw_pair, sixth_power_scaling) {
    for (double d : {1.0, 2.5, 3.76, 9.0}) {
        EXPECT_NEAR(vdw_pair(constants::kC6, 2 * d), vdw_pair(constants::kC6, d) / 64, 1e-12 * vdw_pair(constants::kC6, d));
        EXPECT_GT(vdw_pair(constants::kC6, d), vdw_pair(constants::kC6, d * 1.01));
    }
}

TEST(vdw_pair, rejects_non_positive_distance) {
    EXPECT_THROW(vdw_pair(constants::kC6, 0.0), DomainError);
    EXPECT_THROW(vdw_pair(constants::kC6, -1.0), DomainError);
}

TEST(geometry, nn_nnn_table) {
    auto g = build_geometry(4);
    EXPECT_NEAR(g.interaction(0, 1), 501.1, 0.05);
    EXPECT_NEAR(g.interaction(1, 2), 501.1, 0.05);
    EXPECT_NEAR(g.interaction(2, 3), 501.1, 0.05);
    EXPECT_NEAR(g.interaction(0, 2), 7.83, 0.005);
    EXPECT_NEAR(g.interaction(1, 3), 7.83, 0.005);
    EXPECT_EQ(g.interaction(0, 3), 0.0);
    EXPECT_EQ(g.interaction(2, 2), 0.0);
    EXPECT_EQ(g.interactions(), g.interactions().transpose());
}

TEST(geometry, full_range_keeps_third_neighbour) {
    auto g = build_geometry(4, constants::kSpacing, constants::kC6, {}, InteractionRange::full);
    EXPECT_NEAR(g.interaction(0, 3), g.nominal_nn() / 729, 1e-12);
    EXPECT_NEAR(g.interaction(0, 3), 0.687, 0.001);
}

TEST(geometry, deviation_stretches_pair) {
    // j < k: d = (k - j) r + dr_j - dr_k.
    std::vector<double> dev{0.05, 0, 0, 0};
    auto g = build_geometry(4, 3.76, 1.416e6, dev);
    EXPECT_NEAR(g.interaction(0, 1), 1.416e6 / std::pow(3.81, 6), 1e-9);
    EXPECT_NEAR(g.interaction(0, 2), 1.416e6 / std::pow(7.57, 6), 1e-12);
    EXPECT_NEAR(g.interaction(1, 2), g.nominal_nn(), 1e-12);
}

TEST(geometry, rejects_bad_input) {
    EXPECT_THROW(build_geometry(3), DomainError);
    EXPECT_THROW(build_geometry(4, 0.0), DomainError);
    std::vector<double> wrong{0.1, 0.2};
    EXPECT_THROW(build_geometry(4, 3.76, 1.416e6, wrong), DomainError);
    std::vector<double> collide{0, 3.76, 0, 0};
    EXPECT_THROW(build_geometry(4, 3.76, 1.416e6, collide), DomainError);
}

TEST(basis, dimensions) {
    EXPECT_EQ(enumerate_basis(4, 1).dimension(), 5);
    EXPECT_EQ(enumerate_basis(8, 2).dimension(), 37);
    EXPECT_EQ(enumerate_basis(4, 4).dimension(), 16);
    EXPECT_EQ(enumerate_basis(6, 3).dimension(), 1 + 6 + 15 + 20);
    EXPECT_THROW(enumerate_basis(4, 0), DomainError);
    EXPECT_THROW(enumerate_basis(4, 5), DomainError);
}

TEST(basis, ordering_and_lookup) {
    auto b = enumerate_basis(5, 3);
    EXPECT_EQ(b.state(0), 0u);
    for (int j = 0; j < 5; ++j) EXPECT_EQ(b.state(b.single(j)), 1u << j);
    for (int i = 1; i < b.dimension(); ++i) {
        const auto a = b.state(i - 1), c = b.state(i);
        EXPECT_TRUE(std::popcount(a) < std::popcount(c) || (std::popcount(a) == std::popcount(c) && a < c));
        EXPECT_EQ(b.index_of(c), i);
        EXPECT_EQ(b.excitations(i), std::popcount(c));
    }
    EXPECT_EQ(b.index_of(0b11110u), -1);
}

TEST(hamiltonian, direct_entries) {
    DriveParams d{1, 10, -200, -200};
    auto g = build_geometry(4);
    auto h1 = build_hamiltonian(enumerate_basis(4, 1), g, d);
    EXPECT_NEAR(h1(1, 0).real(), angular(1), 1e-12);
    EXPECT_NEAR(h1(2, 0).real(), angular(10), 1e-12);
    EXPECT_NEAR(h1(2, 2).real(), angular(-200), 1e-12);

    auto b2 = enumerate_basis(4, 2);
    auto h2 = build_hamiltonian(b2, g, d);
    const int i12 = b2.index_of(0b0011u);
    EXPECT_NEAR(h2(i12, i12).real(), angular(-200 - 200 + g.nominal_nn()), 1e-9);
    EXPECT_NEAR(g.nominal_nn(), 501.1, 0.05);
    EXPECT_EQ((h2 - h2.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(h2.imag().cwiseAbs().maxCoeff(), 0.0);
}

namespace {

// Independent dense construction over all 2^N patterns.
Eigen::MatrixXd brute_force(const ArrayGeometry& g, const DriveParams& d) {
    const int n = g.size();
    const int full = 1 << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(full, full);
    for (int s = 0; s < full; ++s) {
        double e = 0;
        for (int j = 0; j < n; ++j) {
            if (!(s >> j & 1)) continue;
            e += d.detuning(j, n);
            for (int k = j + 1; k < n; ++k)
                if (s >> k & 1) e += g.interaction(j, k);
        }
        h(s, s) = angular(e);
        for (int j = 0; j < n; ++j) h(s ^ (1 << j), s) = angular(d.rabi(j, n));
    }
    return h;
}

}  // namespace

TEST(hamiltonian, matches_brute_force_and_truncates_to_submatrix) {
    DriveParams d{2.5, 7, -180, 210};
    for (int n : {4, 5, 6}) {
        for (auto range : {InteractionRange::nn_nnn, InteractionRange::full}) {
            auto g = build_geometry(n, constants::kSpacing, constants::kC6, {}, range);
            auto ref = brute_force(g, d);
            auto full = enumerate_basis(n, n);
            auto h = build_hamiltonian(full, g, d);
            for (int a = 0; a < full.dimension(); ++a)
                for (int b = 0; b < full.dimension(); ++b)
                    ASSERT_NEAR(h(a, b).real(), ref(full.state(a), full.state(b)), 1e-9);

            for (int n_max = 1; n_max < n; ++n_max) {
                auto small = enumerate_basis(n, n_max);
                auto hs = build_hamiltonian(small, g, d);
                for (int a = 0; a < small.dimension(); ++a)
                    for (int b = 0; b < small.dimension(); ++b)
                        ASSERT_EQ(hs(a, b), h(full.index_of(small.state(a)), full.index_of(small.state(b))));
            }
        }
    }
}

TEST(hamiltonian, rejects_mismatched_sizes) {
    EXPECT_THROW(build_hamiltonian(enumerate_basis(5, 2), build_geometry(4), DriveParams{1, 10, -200, -200}),
                 DomainError);
}

TEST(drive, marginal_sites_and_warnings) {
    DriveParams d{1, 10, -200, -200};
    EXPECT_EQ(d.rabi(0, 6), 1);
    EXPECT_EQ(d.rabi(5, 6), 1);
    EXPECT_EQ(d.rabi(3, 6), 10);
    EXPECT_TRUE(d.warnings(501.1).empty());
    EXPECT_EQ(DriveParams({1, 10, -20, -200}).warnings(501.1).size(), 0u);
    EXPECT_FALSE(DriveParams({1, 10, -500, -200}).warnings(501.1).empty());
    EXPECT_FALSE(DriveParams({1, 10, -200, -50}).warnings(501.1).empty());
}
