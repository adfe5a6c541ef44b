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

#include "rydberg/hwmodel.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace rydberg {

using nlohmann::json;

double power_at_target(const RadiationSource& source) {
    return source.power_at_source * (1.0 - source.loss_fraction);
}

double NativeGateParams::angular(double quoted) const {
    return rabi_convention == RabiConvention::LinearFrequency ? 2.0 * constants::pi * quoted : quoted;
}

double dipole_area() {
    return constants::mu0 * constants::bohr_magneton / (constants::hbar * constants::speed_of_light);
}

double radiative_area(const MicrowaveCavity& cavity) {
    const double cutoff = constants::speed_of_light * cavity.bessel_root;
    const double wa = cavity.transition_angular_frequency * cavity.radius;
    if (!(wa > cutoff)) {
        throw std::domain_error("cavity below cutoff: omega*a must exceed c*p'_11");
    }
    const double ratio = cutoff / wa;
    return (4.0 * cavity.bessel_integral / cavity.bessel_root) * constants::pi * cavity.radius *
           cavity.radius / std::sqrt(1.0 - ratio * ratio);
}

double microwave_power_from_rabi(double omega, const MicrowaveCavity& cavity) {
    return 0.5 * (radiative_area(cavity) / dipole_area()) * constants::hbar * omega * omega;
}

const RadiationSource& HardwareProfile::source(std::string_view id) const {
    auto it = sources.find(std::string(id));
    if (it == sources.end()) {
        throw ProfileError("unknown radiation source '" + std::string(id) + "'");
    }
    return it->second;
}

HardwareProfile default_profile() {
    HardwareProfile p;
    auto add = [&p](std::string_view id, double power, double loss, std::string description) {
        p.sources.emplace(std::string(id), RadiationSource{std::string(id), power, loss, std::move(description)});
    };
    add(source_ids::microwave, 57.4 * units::mW, 0.0, "cylindrical-cavity microwave drive, global xy rotations");
    add(source_ids::laser459, 100.0 * units::mW, 0.5, "459 nm laser, local Rz and CZ two-photon leg");
    add(source_ids::laser1040, 11.0 * units::W, 0.1, "1040 nm laser, CZ two-photon leg, side illumination");
    add(source_ids::trap, 10.0 * units::mW, 0.7, "optical trap, per trap");
    add(source_ids::tweezer, 100.0 * units::mW, 0.0, "transport tweezer");
    add(source_ids::cooling, 1.0 * units::mW, 0.0, "laser cooling");
    add(source_ids::pumping, 1.0 * units::mW, 0.0, "895 nm optical pumping");
    add(source_ids::measurement, 0.22 * units::mW, 0.0, "852 nm imaging, per beam");
    p.calibration.enabled = true;
    p.traps.array_traps = 49;
    p.cavity = MicrowaveCavity{
        2.0 * constants::pi * 9.192631770 * units::GHz,
        15.0 * units::mm,
        1.8411837813406593,
        8.7177e20,
    };
    return p;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ProfileError(msg); }

void require_positive(double v, const std::string& key) {
    if (!std::isfinite(v) || v <= 0.0) {
        fail("validation error: " + key + " must be > 0");
    }
}

void require_non_negative(double v, const std::string& key) {
    if (!std::isfinite(v) || v < 0.0) {
        fail("validation error: " + key + " must be >= 0");
    }
}

// Shortest decimal d with d * scale == value, so that a value written in
// display units reads back bit-identical.
double to_display(double value, double scale) {
    const double d = value / scale;
    for (int digits = 1; digits <= 17; ++digits) {
        const double candidate = std::strtod(fmt::format("{:.{}g}", d, digits).c_str(), nullptr);
        if (candidate * scale == value) {
            return candidate;
        }
    }
    for (double probe = d, lo = d, i = 0; i < 8; ++i) {
        lo = std::nextafter(lo, -INFINITY);
        probe = std::nextafter(probe, INFINITY);
        if (lo * scale == value) {
            return lo;
        }
        if (probe * scale == value) {
            return probe;
        }
    }
    return d;
}

class Block {
public:
    Block(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
        if (!obj_.is_object()) {
            fail("schema error: '" + name_ + "' must be an object");
        }
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        std::set<std::string_view> known(keys);
        for (const auto& [k, _] : obj_.items()) {
            if (!known.contains(k)) {
                fail("schema error: unknown key '" + name_ + "." + k + "'");
            }
        }
    }

    void number(const char* key, double scale, double& out) const {
        if (!obj_.contains(key)) {
            return;
        }
        const auto& v = obj_.at(key);
        if (!v.is_number()) {
            fail("schema error: '" + name_ + "." + key + "' must be a number");
        }
        out = v.get<double>() * scale;
    }

    void integer(const char* key, int& out) const {
        if (!obj_.contains(key)) {
            return;
        }
        const auto& v = obj_.at(key);
        if (!v.is_number_integer()) {
            fail("schema error: '" + name_ + "." + key + "' must be an integer");
        }
        out = v.get<int>();
    }

    void boolean(const char* key, bool& out) const {
        if (!obj_.contains(key)) {
            return;
        }
        const auto& v = obj_.at(key);
        if (!v.is_boolean()) {
            fail("schema error: '" + name_ + "." + key + "' must be a boolean");
        }
        out = v.get<bool>();
    }

    void string(const char* key, std::string& out) const {
        if (!obj_.contains(key)) {
            return;
        }
        const auto& v = obj_.at(key);
        if (!v.is_string()) {
            fail("schema error: '" + name_ + "." + key + "' must be a string");
        }
        out = v.get<std::string>();
    }

private:
    const json& obj_;
    std::string name_;
};

}  // namespace

std::string_view to_string(RabiConvention convention) {
    return convention == RabiConvention::LinearFrequency ? "linear-frequency" : "angular-frequency";
}

RabiConvention rabi_convention_from_string(std::string_view text) {
    if (text == "linear-frequency") {
        return RabiConvention::LinearFrequency;
    }
    if (text == "angular-frequency") {
        return RabiConvention::AngularFrequency;
    }
    fail("schema error: rabi_convention must be 'linear-frequency' or 'angular-frequency', got '" +
         std::string(text) + "'");
}

void validate(const HardwareProfile& p) {
    for (auto id : kRequiredSources) {
        if (!p.sources.contains(std::string(id))) {
            fail("schema error: missing required source '" + std::string(id) + "'");
        }
    }
    for (const auto& [id, s] : p.sources) {
        if (s.id != id) {
            fail("schema error: source key '" + id + "' does not match id '" + s.id + "'");
        }
        require_positive(s.power_at_source, "sources." + id + ".power_mw");
        if (!std::isfinite(s.loss_fraction) || s.loss_fraction < 0.0 || s.loss_fraction >= 1.0) {
            fail("validation error: sources." + id + ".loss_fraction must be in [0, 1)");
        }
    }
    require_positive(p.gates.rabi_global, "gates.rabi_global_khz");
    require_positive(p.gates.rabi_rz, "gates.rabi_rz_khz");
    require_positive(p.gates.rabi_cz, "gates.rabi_cz_khz");
    if (!std::isfinite(p.gates.cz_phase_phi01)) {
        fail("validation error: gates.cz_phase_phi01_rad must be finite");
    }
    require_positive(p.gates.cz_detuning_ratio, "gates.cz_detuning_ratio");

    if (p.calibration.enabled) {
        require_positive(p.calibration.t_hadamard, "calibration.t_hadamard_us");
        require_positive(p.calibration.e_hadamard, "calibration.e_hadamard_uj");
        require_positive(p.calibration.t_cz, "calibration.t_cz_us");
        require_positive(p.calibration.e_cz, "calibration.e_cz_uj");
    }

    require_positive(p.traps.beam_width, "traps.beam_width_um");
    if (!(p.traps.grid_spacing > p.traps.beam_width)) {
        fail("validation error: traps.grid_spacing_um must exceed traps.beam_width_um");
    }
    if (p.traps.array_traps && *p.traps.array_traps < 1) {
        fail("validation error: traps.array_traps must be >= 1");
    }

    require_positive(p.transport.max_speed, "transport.max_speed_um_per_us");
    require_positive(p.transport.transports_per_gate_slope, "transport.transports_per_gate_slope");

    require_non_negative(p.prep.cooling_duration, "prep.cooling_duration_ms");
    require_non_negative(p.prep.pumping_duration, "prep.pumping_duration_ms");
    require_non_negative(p.prep.measurement_duration, "prep.measurement_duration_ms");
    if (p.prep.measurement_beam_count < 0) {
        fail("validation error: prep.measurement_beam_count must be >= 0");
    }
    if (p.prep.shots < 1) {
        fail("validation error: prep.shots must be >= 1");
    }

    if (p.cavity) {
        require_positive(p.cavity->transition_angular_frequency, "cavity.transition_frequency_ghz");
        require_positive(p.cavity->radius, "cavity.radius_mm");
        require_positive(p.cavity->bessel_root, "cavity.bessel_root");
        require_positive(p.cavity->bessel_integral, "cavity.bessel_integral");
        if (!(p.cavity->transition_angular_frequency * p.cavity->radius >
              constants::speed_of_light * p.cavity->bessel_root)) {
            fail("validation error: cavity is below cutoff (omega*a <= c*p'_11)");
        }
    }
    require_non_negative(p.scaling_prep_time, "scaling_prep_time_ms");
}

HardwareProfile profile_from_json(const json& doc) {
    Block root(doc, "profile");
    root.allow({"sources", "gates", "calibration", "traps", "transport", "prep", "cavity", "scaling_prep_time_ms"});

    HardwareProfile p;
    if (!doc.contains("sources")) {
        fail("schema error: missing 'sources' block");
    }
    const auto& sources = doc.at("sources");
    if (!sources.is_object()) {
        fail("schema error: 'sources' must be an object");
    }
    for (const auto& [id, body] : sources.items()) {
        Block b(body, "sources." + id);
        b.allow({"power_mw", "loss_fraction", "description"});
        if (!body.contains("power_mw")) {
            fail("schema error: 'sources." + id + ".power_mw' is required");
        }
        RadiationSource s{id, 0.0, 0.0, ""};
        b.number("power_mw", units::mW, s.power_at_source);
        b.number("loss_fraction", 1.0, s.loss_fraction);
        b.string("description", s.description);
        p.sources.emplace(id, std::move(s));
    }

    if (doc.contains("gates")) {
        Block b(doc.at("gates"), "gates");
        b.allow({"rabi_convention", "rabi_global_khz", "rabi_rz_khz", "rabi_cz_khz", "cz_phase_phi01_rad",
                 "cz_detuning_ratio"});
        std::string conv(to_string(p.gates.rabi_convention));
        b.string("rabi_convention", conv);
        p.gates.rabi_convention = rabi_convention_from_string(conv);
        b.number("rabi_global_khz", units::kHz, p.gates.rabi_global);
        b.number("rabi_rz_khz", units::kHz, p.gates.rabi_rz);
        b.number("rabi_cz_khz", units::kHz, p.gates.rabi_cz);
        b.number("cz_phase_phi01_rad", 1.0, p.gates.cz_phase_phi01);
        b.number("cz_detuning_ratio", 1.0, p.gates.cz_detuning_ratio);
    }

    if (doc.contains("calibration")) {
        Block b(doc.at("calibration"), "calibration");
        b.allow({"enabled", "t_hadamard_us", "e_hadamard_uj", "t_cz_us", "e_cz_uj"});
        p.calibration.enabled = true;
        b.boolean("enabled", p.calibration.enabled);
        b.number("t_hadamard_us", units::us, p.calibration.t_hadamard);
        b.number("e_hadamard_uj", units::uJ, p.calibration.e_hadamard);
        b.number("t_cz_us", units::us, p.calibration.t_cz);
        b.number("e_cz_uj", units::uJ, p.calibration.e_cz);
    }

    if (doc.contains("traps")) {
        Block b(doc.at("traps"), "traps");
        b.allow({"grid_spacing_um", "beam_width_um", "array_traps", "include_measurement_in_trap_time"});
        b.number("grid_spacing_um", units::um, p.traps.grid_spacing);
        b.number("beam_width_um", units::um, p.traps.beam_width);
        if (doc.at("traps").contains("array_traps")) {
            int count = 0;
            b.integer("array_traps", count);
            p.traps.array_traps = count;
        }
        b.boolean("include_measurement_in_trap_time", p.traps.include_measurement_in_trap_time);
    }

    if (doc.contains("transport")) {
        Block b(doc.at("transport"), "transport");
        b.allow({"max_speed_um_per_us", "transports_per_gate_slope", "transport_extends_trap_time"});
        b.number("max_speed_um_per_us", units::um / units::us, p.transport.max_speed);
        b.number("transports_per_gate_slope", 1.0, p.transport.transports_per_gate_slope);
        b.boolean("transport_extends_trap_time", p.transport.transport_extends_trap_time);
    }

    if (doc.contains("prep")) {
        Block b(doc.at("prep"), "prep");
        b.allow({"cooling_duration_ms", "pumping_duration_ms", "measurement_beam_count", "measurement_duration_ms",
                 "shots"});
        b.number("cooling_duration_ms", units::ms, p.prep.cooling_duration);
        b.number("pumping_duration_ms", units::ms, p.prep.pumping_duration);
        b.integer("measurement_beam_count", p.prep.measurement_beam_count);
        b.number("measurement_duration_ms", units::ms, p.prep.measurement_duration);
        b.integer("shots", p.prep.shots);
    }

    if (doc.contains("cavity")) {
        const auto& body = doc.at("cavity");
        Block b(body, "cavity");
        b.allow({"transition_frequency_ghz", "radius_mm", "bessel_root", "bessel_integral"});
        for (const char* key : {"transition_frequency_ghz", "radius_mm", "bessel_root", "bessel_integral"}) {
            if (!body.contains(key)) {
                fail(std::string("schema error: 'cavity.") + key + "' is required");
            }
        }
        MicrowaveCavity c;
        b.number("transition_frequency_ghz", 2.0 * constants::pi * units::GHz, c.transition_angular_frequency);
        b.number("radius_mm", units::mm, c.radius);
        b.number("bessel_root", 1.0, c.bessel_root);
        b.number("bessel_integral", 1.0, c.bessel_integral);
        p.cavity = c;
    }

    if (doc.contains("scaling_prep_time_ms")) {
        root.number("scaling_prep_time_ms", units::ms, p.scaling_prep_time);
    }

    validate(p);
    return p;
}

json profile_to_json(const HardwareProfile& p) {
    json doc;
    json sources = json::object();
    for (const auto& [id, s] : p.sources) {
        json body{{"power_mw", to_display(s.power_at_source, units::mW)}, {"loss_fraction", s.loss_fraction}};
        if (!s.description.empty()) {
            body["description"] = s.description;
        }
        sources[id] = std::move(body);
    }
    doc["sources"] = std::move(sources);
    doc["gates"] = {
        {"rabi_convention", std::string(to_string(p.gates.rabi_convention))},
        {"rabi_global_khz", to_display(p.gates.rabi_global, units::kHz)},
        {"rabi_rz_khz", to_display(p.gates.rabi_rz, units::kHz)},
        {"rabi_cz_khz", to_display(p.gates.rabi_cz, units::kHz)},
        {"cz_phase_phi01_rad", p.gates.cz_phase_phi01},
        {"cz_detuning_ratio", p.gates.cz_detuning_ratio},
    };
    doc["calibration"] = {
        {"enabled", p.calibration.enabled},
        {"t_hadamard_us", to_display(p.calibration.t_hadamard, units::us)},
        {"e_hadamard_uj", to_display(p.calibration.e_hadamard, units::uJ)},
        {"t_cz_us", to_display(p.calibration.t_cz, units::us)},
        {"e_cz_uj", to_display(p.calibration.e_cz, units::uJ)},
    };
    json traps{
        {"grid_spacing_um", to_display(p.traps.grid_spacing, units::um)},
        {"beam_width_um", to_display(p.traps.beam_width, units::um)},
        {"include_measurement_in_trap_time", p.traps.include_measurement_in_trap_time},
    };
    if (p.traps.array_traps) {
        traps["array_traps"] = *p.traps.array_traps;
    }
    doc["traps"] = std::move(traps);
    doc["transport"] = {
        {"max_speed_um_per_us", to_display(p.transport.max_speed, units::um / units::us)},
        {"transports_per_gate_slope", p.transport.transports_per_gate_slope},
        {"transport_extends_trap_time", p.transport.transport_extends_trap_time},
    };
    doc["prep"] = {
        {"cooling_duration_ms", to_display(p.prep.cooling_duration, units::ms)},
        {"pumping_duration_ms", to_display(p.prep.pumping_duration, units::ms)},
        {"measurement_beam_count", p.prep.measurement_beam_count},
        {"measurement_duration_ms", to_display(p.prep.measurement_duration, units::ms)},
        {"shots", p.prep.shots},
    };
    if (p.cavity) {
        doc["cavity"] = {
            {"transition_frequency_ghz",
             to_display(p.cavity->transition_angular_frequency, 2.0 * constants::pi * units::GHz)},
            {"radius_mm", to_display(p.cavity->radius, units::mm)},
            {"bessel_root", p.cavity->bessel_root},
            {"bessel_integral", p.cavity->bessel_integral},
        };
    }
    doc["scaling_prep_time_ms"] = to_display(p.scaling_prep_time, units::ms);
    return doc;
}

HardwareProfile parse_profile(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("schema error: profile is not valid JSON: ") + e.what());
    }
    return profile_from_json(doc);
}

HardwareProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open profile '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

void save_profile(const HardwareProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        fail("cannot write profile '" + path + "'");
    }
    out << profile_to_json(profile).dump(2) << '\n';
}

}  // namespace rydberg
