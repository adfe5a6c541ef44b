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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydberg/circuit.hpp"
#include "rydberg/hwmodel.hpp"

namespace rydberg {

enum class PulsePurpose {
    GlobalXY,
    LocalRz,
    CzTwoPhoton,
    CzCorrection,
    Opaque,
    CalibratedHadamard,
    CalibratedCz,
};

std::string_view to_string(PulsePurpose purpose);

// Pseudo-source for calibrated gate blocks, which carry their own energy.
inline constexpr std::string_view kCalibratedSource = "calibrated";

struct Pulse {
    std::string source_id;
    double duration = 0.0;  // s, > 0
    PulsePurpose purpose = PulsePurpose::GlobalXY;
    std::vector<Qubit> qubits;
    std::optional<double> fixed_energy;  // J, calibrated blocks only

    bool operator==(const Pulse&) const = default;
};

// Pulses that run simultaneously. Only the two lasers of a CZ two-photon
// pulse share a step; everything else is a step of its own.
struct PulseStep {
    std::vector<Pulse> pulses;

    [[nodiscard]] double duration() const;
    bool operator==(const PulseStep&) const = default;
};

class PulseSchedule {
public:
    void add(Pulse pulse);
    void add_group(std::vector<Pulse> pulses);
    void append(const PulseSchedule& other);

    [[nodiscard]] const std::vector<PulseStep>& steps() const { return steps_; }
    [[nodiscard]] bool empty() const { return steps_.empty(); }
    [[nodiscard]] std::size_t pulse_count() const;

    bool operator==(const PulseSchedule&) const = default;

private:
    std::vector<PulseStep> steps_;
};

enum class CompileMode { FirstPrinciples, Calibrated };

std::string_view to_string(CompileMode mode);
CompileMode compile_mode_from_string(std::string_view text);

// R_phi(theta) on q as global(phi+pi/2, pi/2), Rz(q, theta), global(phi+pi/2, -pi/2).
std::vector<Gate> decompose_local_rotation(Qubit q, double phi, double theta);

// Rz(pi) followed by a local y rotation by pi/2, lowered to native gates.
std::vector<Gate> decompose_hadamard(Qubit q);

// Controlled-Rz through two CZ and three target-side Rz; the Hadamards
// are left abstract.
std::vector<Gate> decompose_crz(Qubit ctrl, Qubit tgt, double theta);

// Three CNOTs, each written as H CZ H on its target.
std::vector<Gate> decompose_swap(Qubit a, Qubit b);

// diag(1, e^{i phi}, e^{i phi}, e^{i(2 phi - pi)}) left by the two Rydberg pulses.
Matrix cz_protocol_matrix(double phi01);

// Two two-photon pulses (459 nm + 1040 nm concurrently), then Rz(-phi01)
// correction pulses on both qubits.
PulseSchedule lower_cz(Qubit q1, Qubit q2, const HardwareProfile& profile);

// Rewrites a circuit into GlobalRPhi, LocalRz and CZ only. OpaqueTimed
// blocks pass through unchanged.
Circuit lower_to_native(const Circuit& circuit);

PulseSchedule compile(const Circuit& circuit, const HardwareProfile& profile, CompileMode mode);

struct ScheduleDuration {
    std::map<std::string, double> on_time;  // s per source
    double wall_clock = 0.0;                // s

    [[nodiscard]] double total_on_time() const;
};

ScheduleDuration schedule_duration(const PulseSchedule& schedule);

}  // namespace rydberg
