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
#include <vector>

#include "rydtransfer/model.hpp"

namespace rydtransfer::cli {

/// One published row: drive, reduced couplings and dynamics figures.
struct TableOneRow {
    std::string family;  ///< Non-Opt, Mod, Opt
    std::string label;   ///< I..IV
    int n_atoms;
    DriveParams drive;
    double j_w, i_w, f0, f, t_g;
};

inline const std::vector<TableOneRow>& table_one() {
    static const std::vector<TableOneRow> rows = {
        {"Non-Opt", "I", 4, {1, 10, -200, -200}, 0.0574, 0.1954, 0.9839, 0.9188, 15.9},
        {"Non-Opt", "I", 4, {1, 10, 200, 200}, 0.0266, 1.8645, 0.9980, 0.3940, 640.0},
        {"Non-Opt", "II", 4, {5, 10, -200, -200}, 0.2870, 0.2985, 0.7158, 0.7107, 1.1},
        {"Non-Opt", "II", 4, {5, 10, 200, 200}, 0.1330, 1.5399, 0.9719, 0.8922, 21.0},
        {"Non-Opt", "III", 6, {5, 10, -200, -200}, 0.2030, 0.3820, 0.3919, 0.3833, 1.4},
        {"Non-Opt", "III", 6, {5, 10, 200, 200}, 0.0940, 10.3451, 0.9870, 0.1873, 290.0},
        {"Non-Opt", "IV", 8, {5, 10, -200, -200}, 0.1557, 0.3969, 0.2532, 0.2432, 1.6},
        {"Non-Opt", "IV", 8, {5, 10, 200, 200}, 0.0690, 79.4930, 0.9813, 0.0624, 4052.0},
        {"Mod", "I", 4, {1, 10, -201.83, -200}, 0.0573, 0, 0.9899, 0.9550, 6.2},
        {"Mod", "I", 4, {1, 10, 201.32, 200}, 0.0264, 0, 0.9908, 0.9387, 13.5},
        {"Mod", "II", 4, {5, 10, -201.54, -200}, 0.2867, 0, 0.9914, 0.9826, 1.2},
        {"Mod", "II", 4, {5, 10, 200.56, 200}, 0.1326, 0, 0.9912, 0.9824, 2.8},
        {"Mod", "III", 6, {5, 10, -201.50, -200}, 0.2027, 0, 0.9356, 0.9134, 1.7},
        {"Mod", "III", 6, {5, 10, 201.08, 200}, 0.0937, 0, 0.9692, 0.9315, 3.8},
        {"Mod", "IV", 8, {5, 10, -201.52, -200}, 0.1555, 0, 0.8549, 0.8144, 2.3},
        {"Mod", "IV", 8, {5, 10, 201.40, 200}, 0.0687, 0, 0.9141, 0.8389, 5.2},
        {"Opt", "I", 4, {1.10, 9.56, -202.77, -201.11}, 0.0600, 0.0095, 0.9932, 0.9626, 6.0},
        {"Opt", "I", 4, {1.06, 10.00, 208.31, 207.03}, 0.0268, 0.0032, 0.9953, 0.9470, 13.3},
        {"Opt", "II", 4, {4.87, 10.17, -215.64, -215.35}, 0.2794, 0.0427, 0.9924, 0.9865, 1.2},
        {"Opt", "II", 4, {5.01, 9.99, 198.72, 198.14}, 0.1344, 0.0193, 0.9948, 0.9844, 2.8},
        {"Opt", "III", 6, {4.50, 11.00, -216.36, -215.84}, 0.2136, 0.0034, 0.9832, 0.9629, 1.4},
        {"Opt", "III", 6, {4.50, 9.52, 209.71, 208.76}, 0.0759, 0.0016, 0.9809, 0.9448, 4.5},
        {"Opt", "IV", 8, {4.51, 10.61, -208.90, -207.17}, 0.1568, 0.0478, 0.9725, 0.9238, 2.2},
        {"Opt", "IV", 8, {4.51, 10.92, 212.20, 210.89}, 0.0702, 0.0312, 0.9404, 0.8617, 5.1},
    };
    return rows;
}

/// Uniform-coupling rows (Omega0 = Omega, no dephasing).
struct TableTwoRow {
    std::string family;
    int n_atoms;
    DriveParams drive;
    double f0, t_g, j0, j, i1, i2, i3;
};

inline const std::vector<TableTwoRow>& table_two() {
    static const std::vector<TableTwoRow> rows = {
        {"Non-Opt", 4, {10, 10, 200, 200}, 0.5447, 1.2, 0.3574, 0.3574, 201.376, 201.734, 201.734},
        {"Non-Opt", 6, {10, 10, 200, 200}, 0.3831, 1.7, 0.3574, 0.3574, 201.376, 201.734, 201.752},
        {"Non-Opt", 8, {10, 10, 200, 200}, 0.3044, 2.2, 0.3574, 0.3574, 201.376, 201.734, 201.752},
        {"Opt", 4, {10, 10, 204.61, 204.21}, 0.9582, 1.3, 0.3475, 0.3479, 205.944, 205.901, 205.901},
        {"Opt", 6, {10, 10, 204.20, 203.79}, 0.8942, 1.8, 0.3484, 0.3488, 205.550, 205.487, 205.506},
        {"Opt", 8, {10, 10, 201.85, 201.42}, 0.8305, 2.3, 0.3536, 0.3541, 203.216, 203.144, 203.163},
    };
    return rows;
}

}  // namespace rydtransfer::cli
