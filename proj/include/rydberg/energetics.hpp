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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rydberg/circuit.hpp"
#include "rydberg/compiler.hpp"
#include "rydberg/hwmodel.hpp"

namespace rydberg {

enum class Category { Baseline, Preparation, Computation, Measurement, Transport };

inline constexpr Category kAllCategories[] = {Category::Baseline, Category::Preparation, Category::Computation,
                                              Category::Measurement, Category::Transport};

std::string_view to_string(Category category);
Category category_from_string(std::string_view text);

// Joules keyed by (category, source). Entries are never negative.
class EnergyLedger {
public:
    using Key = std::pair<Category, std::string>;

    void add(Category category, std::string_view source, double joules);

    [[nodiscard]] double at(Category category, std::string_view source) const;
    [[nodiscard]] double category_total(Category category) const;
    [[nodiscard]] double total() const;
    [[nodiscard]] const std::map<Key, double>& entries() const { return entries_; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }

    [[nodiscard]] EnergyLedger scaled(double factor) const;
    EnergyLedger& operator+=(const EnergyLedger& other);
    friend EnergyLedger operator+(EnergyLedger a, const EnergyLedger& b) { return a += b; }

    bool operator==(const EnergyLedger&) const = default;

private:
    std::map<Key, double> entries_;
};

// {"categories": {category: {source: J}}, "total_J": J}
nlohmann::json ledger_to_json(const EnergyLedger& ledger);
EnergyLedger ledger_from_json(const nlohmann::json& doc);
// "category,source,joules" rows with a header line.
std::string ledger_to_csv(const EnergyLedger& ledger);

// Computation energy of a schedule: billing power times on-time per source,
// plus the stored energy of calibrated blocks.
EnergyLedger schedule_energy(const PulseSchedule& schedule, const HardwareProfile& profile);

// Trap count billed for an n-qubit run: the fixed array when the profile
// names one, else the covering square grid.
int trap_count(int n_qubits, const HardwareProfile& profile);

struct RunOptions {
    int shots = 1;
    CompileMode mode = CompileMode::Calibrated;
};

// Every category for `shots` executions of `circuit`.
EnergyLedger run_energy(const Circuit& circuit, const HardwareProfile& profile, RunOptions options);

// Per-source on-times of one execution, measured on the apparatus.
struct MeasuredRun {
    double microwave = 0.0;  // s
    double laser459 = 0.0;   // s
    double laser1040 = 0.0;  // s
    int shots = 1;
    int n_qubits = 4;

    // The 1040 nm light only runs alongside the 459 nm light.
    [[nodiscard]] double wall_clock() const;
};

// On-times of the four-qubit hydrogen phase-estimation run, 700 shots.
MeasuredRun h2_phase_estimation_run();

struct ExperimentReport {
    EnergyLedger ledger;               // all shots
    EnergyLedger per_shot;             // one shot
    double computation_per_shot = 0.0; // J
    double computation_total = 0.0;    // J
    double trap_power = 0.0;           // W
    double trap_time = 0.0;            // s per shot
    double grand_total = 0.0;          // J
};

ExperimentReport reproduce_qpe_experiment(const MeasuredRun& run, const HardwareProfile& profile);

enum class NativeGate { GlobalXY, LocalRz, CZ, Hadamard };

// Energy of one native gate; `angle` is ignored for CZ and Hadamard.
double gate_energy(NativeGate gate, double angle, const HardwareProfile& profile, CompileMode mode);

}  // namespace rydberg
