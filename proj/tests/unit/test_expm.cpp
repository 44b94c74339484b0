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

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "rydtransfer/expm.hpp"

using namespace rydtransfer;

namespace {

ComplexMatrix random_matrix(int n, double norm, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return a * (norm / a.cwiseAbs().colwise().sum().maxCoeff());
}

double rel_err(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST(expm, zero_is_identity) {
    auto e = expm(ComplexMatrix::Zero(6, 6));
    EXPECT_EQ(e, ComplexMatrix::Identity(6, 6));
}

TEST(expm, diagonal) {
    ComplexVector d(4);
    d << std::complex<double>(0.3, 1), std::complex<double>(-2, 0), std::complex<double>(0, -7), 1.5;
    auto e = expm(ComplexMatrix(d.asDiagonal()));
    for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(e(i, i) - std::exp(d(i))), 1e-13 * std::abs(std::exp(d(i))));
    EXPECT_LT((e - ComplexMatrix(e.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
}

// Norms chosen to land in every Pade branch and in the scaling regime.
TEST(expm, agrees_with_eigen_reference) {
    for (double norm : {1e-3, 0.1, 0.9, 2.0, 4.5, 30.0, 400.0}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto a = random_matrix(12, norm, seed);
            ComplexMatrix ref = a.exp();
            EXPECT_LT(rel_err(expm(a), ref), 1e-11) << "norm " << norm;
        }
    }
}

TEST(expm, anti_hermitian_gives_unitary) {
    auto a = random_matrix(10, 50, 7);
    ComplexMatrix h = (a + a.adjoint()) / 2;
    ComplexMatrix u = expm(std::complex<double>(0, -1) * h);
    EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(expm, inverse) {
    auto a = random_matrix(8, 3, 11);
    EXPECT_LT((expm(a) * expm(-a) - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}
