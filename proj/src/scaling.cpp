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

#include "rydberg/scaling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "rydberg/energetics.hpp"
#include "rydberg/layout.hpp"

namespace rydberg {

namespace {

constexpr double pi = std::numbers::pi;

// 2^(1-m) is exactly zero in double precision beyond this m.
constexpr std::int64_t kLastNonzeroRotation = 1100;

void require_n(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("qubit count must be >= 1");
    }
}

}  // namespace

double rotation_weight_sum(std::int64_t n) {
    require_n(n);
    double sum = 0.0;
    const std::int64_t last = std::min(n, kLastNonzeroRotation);
    for (std::int64_t m = 1; m <= last; ++m) {
        sum += static_cast<double>(n - m) * std::ldexp(1.0, static_cast<int>(1 - m));
    }
    return sum;
}

double rotation_weight_derived_closed_form(std::int64_t n) {
    require_n(n);
    const double nd = static_cast<double>(n);
    return 2.0 * nd - 4.0 + std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(2 - n, -2000)));
}

double rotation_weight_printed_closed_form(std::int64_t n) {
    require_n(n);
    const double nd = static_cast<double>(n);
    return 4.0 * (nd - 1.0 + std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(-n, -2000))));
}

GateConstants gate_constants(const HardwareProfile& profile, CompileMode mode) {
    if (mode == CompileMode::Calibrated) {
        const auto& c = profile.calibration;
        return GateConstants{c.e_hadamard, c.e_cz, c.t_hadamard, c.t_cz};
    }
    Circuit h(1);
    h.add(Hadamard{0});
    Circuit cz(2);
    cz.add(CZ{0, 1});
    const PulseSchedule sh = compile(h, profile, mode);
    const PulseSchedule scz = compile(cz, profile, mode);
    return GateConstants{
        schedule_energy(sh, profile).total(),
        schedule_energy(scz, profile).total(),
        schedule_duration(sh).wall_clock,
        schedule_duration(scz).wall_clock,
    };
}

double rz_pi_energy(const HardwareProfile& profile) {
    return profile.billing_power(source_ids::laser459) * rz_pi_time(profile);
}

double rz_pi_time(const HardwareProfile& profile) { return pi / profile.gates.omega_rz(); }

double crz_energy(int m, const HardwareProfile& profile, CompileMode mode) {
    if (m < 1) {
        throw std::invalid_argument("CRz index m must be >= 1");
    }
    const GateConstants g = gate_constants(profile, mode);
    return 4.0 * g.e_hadamard + 2.0 * g.e_cz + rz_pi_energy(profile) * std::ldexp(1.0, std::max(1 - m, -2000));
}

std::string_view to_string(QftEnergyMethod method) {
    switch (method) {
        case QftEnergyMethod::DirectSum: return "direct_sum";
        case QftEnergyMethod::PrintedClosedForm: return "printed_closed_form";
        case QftEnergyMethod::DerivedClosedForm: return "derived_closed_form";
    }
    return "?";
}

double qft_gate_energy(std::int64_t n, const HardwareProfile& profile, QftEnergyMethod method, CompileMode mode) {
    require_n(n);
    const GateConstants g = gate_constants(profile, mode);
    const double nd = static_cast<double>(n);
    if (method == QftEnergyMethod::DirectSum) {
        const double rz = rz_pi_energy(profile);
        const double fixed = 4.0 * g.e_hadamard + 2.0 * g.e_cz;
        double sum = nd * g.e_hadamard;
        for (std::int64_t m = 1; m <= n; ++m) {
            const double rotation = m <= kLastNonzeroRotation ? rz * std::ldexp(1.0, static_cast<int>(1 - m)) : 0.0;
            sum += static_cast<double>(n - m) * (fixed + rotation);
        }
        return sum;
    }
    const double weight = method == QftEnergyMethod::DerivedClosedForm ? rotation_weight_derived_closed_form(n)
                                                                       : rotation_weight_printed_closed_form(n);
    return (nd + 2.0 * nd * (nd - 1.0)) * g.e_hadamard + nd * (nd - 1.0) * g.e_cz + rz_pi_energy(profile) * weight;
}

double qft_time(std::int64_t n, const HardwareProfile& profile, CompileMode mode) {
    require_n(n);
    const GateConstants g = gate_constants(profile, mode);
    const double nd = static_cast<double>(n);
    return (nd + 2.0 * nd * (nd - 1.0)) * g.t_hadamard + nd * (nd - 1.0) * g.t_cz +
           rz_pi_time(profile) * rotation_weight_sum(n);
}

namespace {

double traps_energy_with(std::int64_t n, double t_qft, double transport_time, const HardwareProfile& profile) {
    const double side = grid_side(n);
    double active = t_qft + profile.scaling_prep_time;
    if (profile.transport.transport_extends_trap_time) {
        active += transport_time;
    }
    return side * side * profile.trap_power_at_source() * active;
}

// One row given D(n); shared by the public entry points and the scans.
EnergyBreakdown breakdown(std::int64_t n, const HardwareProfile& profile, CompileMode mode, QftEnergyMethod method,
                          double mean_distance) {
    EnergyBreakdown b;
    b.n = n;
    const double nd = static_cast<double>(n);
    const double hops = profile.transport.transports_per_gate_slope * nd * (nd - 1.0) * mean_distance;
    const HopCost hop = single_hop_cost(profile);
    b.t_qft = qft_time(n, profile, mode);
    b.e_gates = qft_gate_energy(n, profile, method, mode);
    b.e_transport = hops * hop.energy;
    b.e_traps = traps_energy_with(n, b.t_qft, hops * hop.time, profile);
    b.e_const = constant_energy(profile);
    b.e_total = b.e_gates + b.e_transport + b.e_traps + b.e_const;
    return b;
}

}  // namespace

double traps_energy(std::int64_t n, const HardwareProfile& profile, CompileMode mode) {
    require_n(n);
    return traps_energy_with(n, qft_time(n, profile, mode), transport_time_analytic(n, profile), profile);
}

double constant_energy(const HardwareProfile& profile) {
    const auto& prep = profile.prep;
    return profile.billing_power(source_ids::cooling) * prep.cooling_duration +
           profile.billing_power(source_ids::pumping) * prep.pumping_duration +
           prep.measurement_beam_count * profile.billing_power(source_ids::measurement) * prep.measurement_duration;
}

EnergyBreakdown total_quantum_energy(std::int64_t n, const HardwareProfile& profile, CompileMode mode) {
    require_n(n);
    return breakdown(n, profile, mode, QftEnergyMethod::DirectSum, mean_pair_distance(n));
}

ScalingCurve scaling_curve(std::span<const std::int64_t> ns, const HardwareProfile& profile, CompileMode mode) {
    ScalingCurve curve;
    std::int64_t prev = 0;
    for (auto n : ns) {
        if (n <= prev) {
            throw std::invalid_argument("scaling curve needs strictly increasing n >= 1");
        }
        prev = n;
        curve.rows.push_back(ScalingRow{total_quantum_energy(n, profile, mode), {}});
    }
    return curve;
}

std::vector<std::int64_t> linear_range(std::int64_t n_min, std::int64_t n_max, std::int64_t step) {
    if (step < 1) {
        throw std::invalid_argument("step must be >= 1");
    }
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(n_min, 1); n <= n_max; n += step) {
        out.push_back(n);
    }
    return out;
}

std::vector<std::int64_t> log_range(std::int64_t n_min, std::int64_t n_max, int points) {
    if (n_min < 1 || n_max < n_min || points < 1) {
        throw std::invalid_argument("log range needs 1 <= n_min <= n_max and points >= 1");
    }
    std::vector<std::int64_t> out;
    if (points == 1) {
        out.push_back(n_min);
        return out;
    }
    const double lo = std::log(static_cast<double>(n_min));
    const double hi = std::log(static_cast<double>(n_max));
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        auto n = static_cast<std::int64_t>(std::llround(std::exp(x)));
        n = std::clamp(n, n_min, n_max);
        if (out.empty() || n > out.back()) {
            out.push_back(n);
        }
    }
    return out;
}

std::string_view to_string(Component component) {
    switch (component) {
        case Component::Gates: return "gates";
        case Component::Transport: return "transport";
        case Component::Traps: return "traps";
        case Component::Const: return "const";
        case Component::Total: return "total";
    }
    return "?";
}

double component_value(const EnergyBreakdown& row, Component component) {
    switch (component) {
        case Component::Gates: return row.e_gates;
        case Component::Transport: return row.e_transport;
        case Component::Traps: return row.e_traps;
        case Component::Const: return row.e_const;
        case Component::Total: return row.e_total;
    }
    return 0.0;
}

double fit_exponent(std::span<const double> n, std::span<const double> energy) {
    if (n.size() != energy.size() || n.size() < 10) {
        throw std::invalid_argument("exponent fit needs at least 10 rows");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(n[i] > 0.0) || !(energy[i] > 0.0)) {
            throw std::domain_error("exponent fit needs strictly positive values");
        }
        lx.push_back(std::log(n[i]));
        ly.push_back(std::log(energy[i]));
    }
    return linear_fit(lx, ly).slope;
}

double fit_exponent(const ScalingCurve& curve, Component component, std::int64_t n_lo, std::int64_t n_hi) {
    std::vector<double> n;
    std::vector<double> e;
    for (const auto& row : curve.rows) {
        if (row.energy.n >= n_lo && row.energy.n <= n_hi) {
            n.push_back(static_cast<double>(row.energy.n));
            e.push_back(component_value(row.energy, component));
        }
    }
    return fit_exponent(n, e);
}

std::optional<std::int64_t> ordering_onset(const HardwareProfile& profile, std::int64_t n_max, CompileMode mode) {
    require_n(n_max);
    // Scanned with the derived closed form (equal to the direct sum) and
    // D(n) memoised per grid side; the direct sum is O(n) per row.
    std::vector<double> distance(static_cast<std::size_t>(grid_side(n_max)) + 1, -1.0);
    std::optional<std::int64_t> onset;
    for (std::int64_t n = n_max; n >= 1; --n) {
        const auto side = static_cast<std::size_t>(grid_side(n));
        if (distance[side] < 0.0) {
            distance[side] = mean_pair_distance_for_side(static_cast<int>(side));
        }
        const EnergyBreakdown b = breakdown(n, profile, mode, QftEnergyMethod::DerivedClosedForm, distance[side]);
        if (!(b.e_traps > b.e_transport && b.e_transport > b.e_gates)) {
            break;
        }
        onset = n;
    }
    return onset;
}

std::vector<ClosedFormCheck> closed_form_check(std::int64_t n_max) {
    std::vector<ClosedFormCheck> out;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        ClosedFormCheck c;
        c.n = n;
        c.direct = rotation_weight_sum(n);
        c.derived = rotation_weight_derived_closed_form(n);
        c.printed = rotation_weight_printed_closed_form(n);
        const auto rel = [&](double v) {
            if (c.direct == 0.0) {
                return v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            return std::abs(v - c.direct) / std::abs(c.direct);
        };
        c.derived_relative_error = rel(c.derived);
        c.printed_relative_error = rel(c.printed);
        out.push_back(c);
    }
    return out;
}

// ---- serialization ---------------------------------------------------------

namespace {

constexpr const char* kCurveColumns[] = {"n", "E_gates_J", "E_transport_J", "E_traps_J",
                                         "E_const_J", "E_total_J", "t_qft_s"};

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed number '" + s + "' in curve");
    }
    return v;
}

std::int64_t parse_int(const std::string& s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed integer '" + s + "' in curve");
    }
    return v;
}

}  // namespace

std::string curve_to_csv(const ScalingCurve& curve) {
    std::string out;
    for (std::size_t i = 0; i < std::size(kCurveColumns); ++i) {
        out += (i ? "," : "");
        out += kCurveColumns[i];
    }
    for (const auto& name : curve.classical_columns) {
        out += ",E_classical_" + name + "_J";
    }
    out += '\n';
    for (const auto& row : curve.rows) {
        const auto& e = row.energy;
        out += fmt::format("{},{},{},{},{},{},{}", e.n, e.e_gates, e.e_transport, e.e_traps, e.e_const, e.e_total,
                           e.t_qft);
        for (const auto& name : curve.classical_columns) {
            out += fmt::format(",{}", row.classical.at(name));
        }
        out += '\n';
    }
    return out;
}

ScalingCurve curve_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty curve CSV");
    }
    const auto header = split(line, ',');
    if (header.size() < std::size(kCurveColumns)) {
        throw std::invalid_argument("curve CSV header is too short");
    }
    for (std::size_t i = 0; i < std::size(kCurveColumns); ++i) {
        if (header[i] != kCurveColumns[i]) {
            throw std::invalid_argument("unexpected curve column '" + header[i] + "'");
        }
    }
    ScalingCurve curve;
    for (std::size_t i = std::size(kCurveColumns); i < header.size(); ++i) {
        const std::string& h = header[i];
        constexpr std::string_view prefix = "E_classical_";
        constexpr std::string_view suffix = "_J";
        if (h.size() <= prefix.size() + suffix.size() || !h.starts_with(prefix) || !h.ends_with(suffix)) {
            throw std::invalid_argument("unexpected curve column '" + h + "'");
        }
        curve.classical_columns.push_back(h.substr(prefix.size(), h.size() - prefix.size() - suffix.size()));
    }
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw std::invalid_argument("curve row has the wrong number of cells");
        }
        ScalingRow row;
        row.energy.n = parse_int(cells[0]);
        row.energy.e_gates = parse_double(cells[1]);
        row.energy.e_transport = parse_double(cells[2]);
        row.energy.e_traps = parse_double(cells[3]);
        row.energy.e_const = parse_double(cells[4]);
        row.energy.e_total = parse_double(cells[5]);
        row.energy.t_qft = parse_double(cells[6]);
        for (std::size_t i = 0; i < curve.classical_columns.size(); ++i) {
            row.classical[curve.classical_columns[i]] = parse_double(cells[std::size(kCurveColumns) + i]);
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

nlohmann::json curve_to_json(const ScalingCurve& curve) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : curve.rows) {
        const auto& e = row.energy;
        nlohmann::json r{
            {"n", e.n},
            {"E_gates_J", e.e_gates},
            {"E_transport_J", e.e_transport},
            {"E_traps_J", e.e_traps},
            {"E_const_J", e.e_const},
            {"E_total_J", e.e_total},
            {"t_qft_s", e.t_qft},
        };
        if (!row.classical.empty()) {
            r["E_classical_J"] = row.classical;
        }
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"classical_columns", curve.classical_columns}, {"rows", std::move(rows)}};
}

ScalingCurve curve_from_json(const nlohmann::json& doc) {
    ScalingCurve curve;
    curve.classical_columns = doc.at("classical_columns").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
        ScalingRow row;
        row.energy.n = r.at("n").get<std::int64_t>();
        row.energy.e_gates = r.at("E_gates_J").get<double>();
        row.energy.e_transport = r.at("E_transport_J").get<double>();
        row.energy.e_traps = r.at("E_traps_J").get<double>();
        row.energy.e_const = r.at("E_const_J").get<double>();
        row.energy.e_total = r.at("E_total_J").get<double>();
        row.energy.t_qft = r.at("t_qft_s").get<double>();
        if (r.contains("E_classical_J")) {
            row.classical = r.at("E_classical_J").get<std::map<std::string, double>>();
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

}  // namespace rydberg
