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
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace rydberg {

// SI multipliers for the unit-suffixed keys used in profile files.
namespace units {
inline constexpr double W = 1.0;
inline constexpr double mW = 1e-3;
inline constexpr double uW = 1e-6;
inline constexpr double s = 1.0;
inline constexpr double ms = 1e-3;
inline constexpr double us = 1e-6;
inline constexpr double J = 1.0;
inline constexpr double mJ = 1e-3;
inline constexpr double uJ = 1e-6;
inline constexpr double m = 1.0;
inline constexpr double mm = 1e-3;
inline constexpr double um = 1e-6;
inline constexpr double Hz = 1.0;
inline constexpr double kHz = 1e3;
inline constexpr double MHz = 1e6;
inline constexpr double GHz = 1e9;
}  // namespace units

// CODATA 2018 values, SI.
namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double mu0 = 1.25663706212e-6;
inline constexpr double bohr_magneton = 9.2740100783e-24;
inline constexpr double speed_of_light = 299792458.0;
}  // namespace constants

// Raised for schema and validation failures while building a profile.
class ProfileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace source_ids {
inline constexpr std::string_view microwave = "microwave";
inline constexpr std::string_view laser459 = "laser459";
inline constexpr std::string_view laser1040 = "laser1040";
inline constexpr std::string_view trap = "trap";
inline constexpr std::string_view tweezer = "tweezer";
inline constexpr std::string_view cooling = "cooling";
inline constexpr std::string_view pumping = "pumping";
inline constexpr std::string_view measurement = "measurement";
}  // namespace source_ids

inline constexpr std::string_view kRequiredSources[] = {
    source_ids::microwave, source_ids::laser459, source_ids::laser1040, source_ids::trap,
    source_ids::tweezer,   source_ids::cooling,  source_ids::pumping,   source_ids::measurement,
};

struct RadiationSource {
    std::string id;
    double power_at_source = 0.0;  // W
    double loss_fraction = 0.0;    // in [0, 1)
    std::string description;

    bool operator==(const RadiationSource&) const = default;
};

// Power delivered to the atoms after losses.
double power_at_target(const RadiationSource& source);

enum class RabiConvention {
    LinearFrequency,   // quoted value f, theta = 2*pi*f*t
    AngularFrequency,  // quoted value Omega, theta = Omega*t
};

struct NativeGateParams {
    double rabi_global = 76.5 * units::kHz;
    double rabi_rz = 600.0 * units::kHz;
    double rabi_cz = 1.7 * units::MHz;
    double cz_phase_phi01 = 1.254;
    double cz_detuning_ratio = 0.377;
    RabiConvention rabi_convention = RabiConvention::LinearFrequency;

    /// Converts a quoted Rabi value into rad/s according to the convention.
    [[nodiscard]] double angular(double quoted) const;
    [[nodiscard]] double omega_global() const { return angular(rabi_global); }
    [[nodiscard]] double omega_rz() const { return angular(rabi_rz); }
    [[nodiscard]] double omega_cz() const { return angular(rabi_cz); }
    [[nodiscard]] double cz_phase_phi11() const { return 2.0 * cz_phase_phi01 - constants::pi; }

    bool operator==(const NativeGateParams&) const = default;
};

struct CalibrationConstants {
    double t_hadamard = 25.7693 * units::us;
    double e_hadamard = 4.98 * units::uJ;
    double t_cz = 12.2836 * units::us;
    double e_cz = 47.3 * units::uJ;
    bool enabled = false;

    bool operator==(const CalibrationConstants&) const = default;
};

// Per-trap power and loss live on the "trap" source.
struct TrapParams {
    double grid_spacing = 3.0 * units::um;
    double beam_width = 1.0 * units::um;
    // Trap count for a fixed experimental array; when absent the square
    // grid covering the register is used.
    std::optional<int> array_traps;
    bool include_measurement_in_trap_time = false;

    bool operator==(const TrapParams&) const = default;
};

// Tweezer power lives on the "tweezer" source.
struct TransportParams {
    double max_speed = 0.55 * units::um / units::us;  // m/s
    double transports_per_gate_slope = 1.10;
    bool transport_extends_trap_time = false;

    bool operator==(const TransportParams&) const = default;
};

// Durations and counts; powers come from the cooling/pumping/measurement sources.
struct PrepMeasureParams {
    double cooling_duration = 100.0 * units::ms;
    double pumping_duration = 10.0 * units::ms;
    int measurement_beam_count = 4;
    double measurement_duration = 90.0 * units::ms;
    int shots = 700;

    bool operator==(const PrepMeasureParams&) const = default;
};

struct MicrowaveCavity {
    double transition_angular_frequency = 0.0;  // rad/s
    double radius = 0.0;                        // m
    double bessel_root = 0.0;                   // p'_11
    double bessel_integral = 0.0;               // I_11

    bool operator==(const MicrowaveCavity&) const = default;
};

// Dipole area mu0 * muB / (hbar * c).
double dipole_area();

// Radiative area of a cylindrical cavity at its transition frequency.
// Throws std::domain_error when omega * a <= c * p'_11.
double radiative_area(const MicrowaveCavity& cavity);

// Microwave power needed to drive Rabi frequency `omega` (rad/s) through `cavity`.
double microwave_power_from_rabi(double omega, const MicrowaveCavity& cavity);

struct HardwareProfile {
    std::map<std::string, RadiationSource> sources;
    NativeGateParams gates;
    CalibrationConstants calibration;
    TrapParams traps;
    TransportParams transport;
    PrepMeasureParams prep;
    std::optional<MicrowaveCavity> cavity;
    double scaling_prep_time = 200.0 * units::ms;

    /// Looks up a source; throws ProfileError naming the id when absent.
    [[nodiscard]] const RadiationSource& source(std::string_view id) const;
    [[nodiscard]] double billing_power(std::string_view id) const { return source(id).power_at_source; }

    [[nodiscard]] double trap_power_at_source() const { return billing_power(source_ids::trap); }
    [[nodiscard]] double tweezer_power() const { return billing_power(source_ids::tweezer); }

    bool operator==(const HardwareProfile&) const = default;
};

// Every hardware value of the reference experiment, calibration enabled.
HardwareProfile default_profile();

// Checks all invariants; throws ProfileError with the offending key.
void validate(const HardwareProfile& profile);

HardwareProfile profile_from_json(const nlohmann::json& doc);
nlohmann::json profile_to_json(const HardwareProfile& profile);

HardwareProfile load_profile(const std::string& path);
HardwareProfile parse_profile(std::string_view text);
void save_profile(const HardwareProfile& profile, const std::string& path);

std::string_view to_string(RabiConvention convention);
RabiConvention rabi_convention_from_string(std::string_view text);

}  // namespace rydberg
