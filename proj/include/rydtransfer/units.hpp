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

#include <numbers>

/// Unit conventions.
///
/// Every user-facing frequency is a linear frequency in MHz (the value that
/// multiplies 2*pi in "2*pi x MHz"), times are in microseconds and lengths in
/// micrometres. Matrix elements are angular frequencies in rad/us; the single
/// conversion happens through `angular()` when an operator is assembled.
namespace rydtransfer {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Converts a linear frequency in MHz to an angular frequency in rad/us.
constexpr double angular(double nu_mhz) { return kTwoPi * nu_mhz; }

namespace constants {

/// C6 for the 73S_{1/2} pair state of 87Rb, in MHz um^6.
inline constexpr double kC6 = 1.416e6;
/// Nearest-neighbour spacing, um.
inline constexpr double kSpacing = 3.76;

// CODATA 2018 exact value.
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kAtomicMassUnit = 1.66053907e-27;  // kg
inline constexpr double kRb87MassU = 86.909;               // u

}  // namespace constants
}  // namespace rydtransfer
