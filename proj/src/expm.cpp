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

#include "rydtransfer/expm.hpp"

#include <array>
#include <cmath>

#include "rydtransfer/errors.hpp"

namespace rydtransfer {
namespace {

double norm1(const ComplexMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade numerator coefficients b_0..b_m for each supported degree.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                           2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {64764752532480000.0,
                                            32382376266240000.0,
                                            7771770303897600.0,
                                            1187353796428800.0,
                                            129060195264000.0,
                                            10559470521600.0,
                                            670442572800.0,
                                            33522128640.0,
                                            1323241920.0,
                                            40840800.0,
                                            960960.0,
                                            16380.0,
                                            182.0,
                                            1.0};

// Largest 1-norm for which degree m reaches unit roundoff without scaling.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

ComplexMatrix solve_pade(const ComplexMatrix& u, const ComplexMatrix& v) {
    // r = (V - U)^{-1} (V + U)
    return (v - u).partialPivLu().solve(v + u);
}

template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
    const Eigen::Index n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    ComplexMatrix odd = b[1] * ident;
    ComplexMatrix even = b[0] * ident;
    ComplexMatrix power = ident;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    return solve_pade(a * odd, even);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
    const auto& b = kPade13;
    const Eigen::Index n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    const ComplexMatrix u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const ComplexMatrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    const ComplexMatrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    return solve_pade(u, v);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("expm needs a square matrix");
    if (a.size() == 0) return a;
    if (!a.allFinite()) throw NumericalInstabilityError("expm: non-finite input");
    const double norm = norm1(a);
    if (norm <= kTheta3) return pade_low(a, kPade3);
    if (norm <= kTheta5) return pade_low(a, kPade5);
    if (norm <= kTheta7) return pade_low(a, kPade7);
    if (norm <= kTheta9) return pade_low(a, kPade9);

    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    ComplexMatrix result = pade13(a / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace rydtransfer
