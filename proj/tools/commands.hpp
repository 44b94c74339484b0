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

#include <string>

#include "config.hpp"

namespace rydtransfer::cli {

struct RunOptions {
    std::string out_dir = "out";
    int threads = 1;
    std::string hash;
};

int cmd_couplings(const ScenarioConfig& c, const RunOptions& o);
int cmd_transfer(const ScenarioConfig& c, const RunOptions& o);
int cmd_mod(const ScenarioConfig& c, const RunOptions& o);
int cmd_optimize(const ScenarioConfig& c, const RunOptions& o);
int cmd_disorder(const ScenarioConfig& c, const RunOptions& o);
int cmd_longtime(const ScenarioConfig& c, const RunOptions& o);

struct ReproduceOptions {
    int n_max = 2;
    int realizations = 100;
    int max_atoms = 4;  ///< largest chain included in the disorder panels
    std::uint64_t seed = 2024;
};

int cmd_reproduce(const std::string& target, const ReproduceOptions& r, const RunOptions& o);

}  // namespace rydtransfer::cli
