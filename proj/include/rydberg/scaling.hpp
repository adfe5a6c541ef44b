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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rydberg/compiler.hpp"
#include "rydberg/hwmodel.hpp"

namespace rydberg {

// Sum over m = 1..n of (n - m) 2^(1 - m): the total controlled-rotation
// angle of an n-qubit QFT in units of pi, with each CRz counted as its
// three target-side Rz pulses.
double rotation_weight_sum(std::int64_t n);
// 2n - 4 + 2^(2 - n), equal to rotation_weight_sum.
double rotation_weight_derived_closed_form(std::int64_t n);
// 4 (n - 1 + 2^-n) as commonly printed; does not equal the sum.
double rotation_weight_printed_closed_form(std::int64_t n);

struct GateConstants {
    double e_hadamard = 0.0;  // J
    double e_cz = 0.0;        // J
    double t_hadamard = 0.0;  // s
    double t_cz = 0.0;        // s
};

// Calibrated mode reads the calibration table; first-principles mode
// compiles one gate of each kind and measures it.
GateConstants gate_constants(const HardwareProfile& profile, CompileMode mode);

// P_459 * pi / Omega_z: energy of a pi rotation about z.
double rz_pi_energy(const HardwareProfile& profile);
// pi / Omega_z
double rz_pi_time(const HardwareProfile& profile);

// 4 E_H + 2 E_CZ + (P pi / Omega) 2^(1 - m)
double crz_energy(int m, const HardwareProfile& profile, CompileMode mode = CompileMode::Calibrated);

enum class QftEnergyMethod { DirectSum, PrintedClosedForm, DerivedClosedForm };

std::string_view to_string(QftEnergyMethod method);

double qft_gate_energy(std::int64_t n, const HardwareProfile& profile,
                       QftEnergyMethod method = QftEnergyMethod::DirectSum,
                       CompileMode mode = CompileMode::Calibrated);

// (n + 2n(n-1)) t_H + n(n-1) t_CZ + (pi / Omega_z) * rotation_weight_sum(n)
double qft_time(std::int64_t n, const HardwareProfile& profile, CompileMode mode = CompileMode::Calibrated);

// ceil(sqrt(n))^2 P_trap (t_QFT(n) + t_prep), plus the analytic transport
// time when the profile asks for it.
double traps_energy(std::int64_t n, const HardwareProfile& profile, CompileMode mode = CompileMode::Calibrated);

// Cooling, pumping and measurement of one run; independent of n.
double constant_energy(const HardwareProfile& profile);

struct EnergyBreakdown {
    std::int64_t n = 0;
    double e_gates = 0.0;
    double e_transport = 0.0;
    double e_traps = 0.0;
    double e_const = 0.0;
    double e_total = 0.0;
    double t_qft = 0.0;

    bool operator==(const EnergyBreakdown&) const = default;
};

EnergyBreakdown total_quantum_energy(std::int64_t n, const HardwareProfile& profile,
                                     CompileMode mode = CompileMode::Calibrated);

struct ScalingRow {
    EnergyBreakdown energy;
    std::map<std::string, double> classical;  // machine name -> J

    bool operator==(const ScalingRow&) const = default;
};

struct ScalingCurve {
    std::vector<ScalingRow> rows;
    std::vector<std::string> classical_columns;

    bool operator==(const ScalingCurve&) const = default;
};

ScalingCurve scaling_curve(std::span<const std::int64_t> ns, const HardwareProfile& profile,
                           CompileMode mode = CompileMode::Calibrated);

// n_min, n_min + step, ... <= n_max
std::vector<std::int64_t> linear_range(std::int64_t n_min, std::int64_t n_max, std::int64_t step);
// `points` log-spaced integers from n_min to n_max inclusive, deduplicated.
std::vector<std::int64_t> log_range(std::int64_t n_min, std::int64_t n_max, int points);

enum class Component { Gates, Transport, Traps, Const, Total };

std::string_view to_string(Component component);
double component_value(const EnergyBreakdown& row, Component component);

// Least-squares slope of log E against log n. Needs >= 10 points and
// strictly positive values (std::domain_error otherwise).
double fit_exponent(std::span<const double> n, std::span<const double> energy);
// Same, restricted to rows with n in [n_lo, n_hi].
double fit_exponent(const ScalingCurve& curve, Component component, std::int64_t n_lo, std::int64_t n_hi);

// Smallest n0 <= n_max such that E_traps > E_transport > E_gates for every
// n in [n0, n_max]; none if the ordering fails at n_max.
std::optional<std::int64_t> ordering_onset(const HardwareProfile& profile, std::int64_t n_max,
                                           CompileMode mode = CompileMode::Calibrated);

struct ClosedFormCheck {
    std::int64_t n = 0;
    double direct = 0.0;   // rotation_weight_sum
    double derived = 0.0;  // 2n - 4 + 2^(2-n)
    double printed = 0.0;  // 4(n - 1 + 2^-n)
    double derived_relative_error = 0.0;
    double printed_relative_error = 0.0;  // vs direct; inf when direct == 0
};

std::vector<ClosedFormCheck> closed_form_check(std::int64_t n_max);

std::string curve_to_csv(const ScalingCurve& curve);
ScalingCurve curve_from_csv(std::string_view text);
nlohmann::json curve_to_json(const ScalingCurve& curve);
ScalingCurve curve_from_json(const nlohmann::json& doc);

}  // namespace rydberg
