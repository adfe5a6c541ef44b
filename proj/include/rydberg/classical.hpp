// Copyright 2026 The Rydberg Energetics Authors
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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rydberg/compiler.hpp"
#include "rydberg/hwmodel.hpp"
#include "rydberg/scaling.hpp"

namespace rydberg {

// A classical machine is described either by its sustained performance and
// power draw, or directly by its energy per bit operation.
struct ClassicalMachine {
    std::string name;
    std::optional<double> performance;  // flop/s
    std::optional<double> power;        // W
    double bitops_per_flop = 1000.0;
    std::optional<double> direct_joules_per_bitop;

    bool operator==(const ClassicalMachine&) const = default;
};

// Direct value when present, else power / performance / bitops_per_flop.
// Throws std::invalid_argument when neither route is available.
double joules_per_bitop(const ClassicalMachine& machine);

// joules_per_bitop * n * 2^n
double fft_energy(const ClassicalMachine& machine, std::int64_t n);

// Smallest n in [n_min, n_max] with E_total(n) < fft_energy(n).
std::optional<std::int64_t> find_crossover(const HardwareProfile& profile, const ClassicalMachine& machine,
                                           std::int64_t n_max, std::int64_t n_min = 1,
                                           CompileMode mode = CompileMode::Calibrated);

struct ComparisonRow {
    std::int64_t n = 0;
    double quantum = 0.0;    // J
    double classical = 0.0;  // J
    double ratio = 0.0;      // quantum / classical
};

std::vector<ComparisonRow> compare(const HardwareProfile& profile, const ClassicalMachine& machine,
                                   std::int64_t n_min, std::int64_t n_max,
                                   CompileMode mode = CompileMode::Calibrated);

// n,E_quantum_J,E_classical_J,ratio
std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);

// Adds one classical column per machine to an existing curve.
void add_classical_columns(ScalingCurve& curve, const std::vector<ClassicalMachine>& machines);

std::vector<ClassicalMachine> builtin_catalog();
std::vector<ClassicalMachine> catalog_from_json(const nlohmann::json& doc);
nlohmann::json catalog_to_json(const std::vector<ClassicalMachine>& machines);
std::vector<ClassicalMachine> load_catalog(const std::string& path);
const ClassicalMachine* find_machine(const std::vector<ClassicalMachine>& catalog, std::string_view name);

}  // namespace rydberg
