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
#include <stdexcept>
#include <string>

namespace rydtransfer {

/// Invalid physical input: colliding atoms, zero coupling, empty boxes.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A perturbative denominator (Delta, Delta + V) is too close to zero.
class ResonanceError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Two atoms ended up on top of each other after position sampling.
class CollisionError : public DomainError {
   public:
    CollisionError(const std::string& what, std::uint64_t seed) : DomainError(what), seed_(seed) {}
    std::uint64_t seed() const { return seed_; }

   private:
    std::uint64_t seed_;
};

/// The fidelity trace has no qualifying maximum inside the sampled window.
class NoPeakError : public std::runtime_error {
   public:
    NoPeakError(const std::string& what, double window_us) : std::runtime_error(what), window_(window_us) {}
    double window() const { return window_; }

   private:
    double window_;
};

/// I_W(Delta0) has no sign change in the scanned bracket.
class NoRootError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NumericalInstabilityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace rydtransfer
