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
#include <optional>
#include <stdexcept>
#include <string>

#include "rydtransfer/disorder.hpp"
#include "rydtransfer/dynamics.hpp"
#include "rydtransfer/model.hpp"
#include "rydtransfer/optimize.hpp"

namespace rydtransfer::cli {

/// Schema or value problem in a scenario file; the message names the key and line.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    double ratio_min = 0.98;
    double ratio_max = 1.05;
    int steps = 141;
};

struct ScenarioConfig {
    int schema_version = 1;
    int n_atoms = 4;
    double r_um = constants::kSpacing;
    double c6 = constants::kC6;
    InteractionRange range = InteractionRange::nn_nnn;
    DriveParams drive;
    NoiseParams noise;
    TransferSettings dynamics;
    DisorderConfig disorder;
    int horizon = 4;
    int samples_per_tg = 200;
    GaConfig ga;
    double fraction = 0.10;
    int ga_restarts = 1;  ///< independent seeds seed, seed+1, ...
    std::optional<SweepSpec> sweep;
    std::string text;  ///< raw file contents, hashed into outputs

    ArrayGeometry geometry() const;
};

ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace rydtransfer::cli
