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

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "rydtransfer/model.hpp"

namespace rydtransfer::cli {

using Json = nlohmann::ordered_json;

inline std::filesystem::path prepare_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

inline Json drive_json(const DriveParams& d) {
    return {{"omega0", d.omega0}, {"omega", d.omega}, {"delta0", d.delta0}, {"delta", d.delta}};
}

}  // namespace rydtransfer::cli
