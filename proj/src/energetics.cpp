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

#include "rydberg/energetics.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rydberg {

using nlohmann::json;

std::string_view to_string(Category category) {
    switch (category) {
        case Category::Baseline: return "baseline";
        case Category::Preparation: return "preparation";
        case Category::Computation: return "computation";
        case Category::Measurement: return "measurement";
        case Category::Transport: return "transport";
    }
    return "?";
}

Category category_from_string(std::string_view text) {
    for (auto c : kAllCategories) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw std::invalid_argument("unknown ledger category '" + std::string(text) + "'");
}

void EnergyLedger::add(Category category, std::string_view source, double joules) {
    if (!std::isfinite(joules) || joules < 0.0) {
        throw std::invalid_argument(fmt::format("ledger entry {}/{} must be a non-negative energy, got {}",
                                                to_string(category), source, joules));
    }
    if (joules == 0.0) {
        return;
    }
    entries_[Key{category, std::string(source)}] += joules;
}

double EnergyLedger::at(Category category, std::string_view source) const {
    auto it = entries_.find(Key{category, std::string(source)});
    return it == entries_.end() ? 0.0 : it->second;
}

double EnergyLedger::category_total(Category category) const {
    double sum = 0.0;
    for (const auto& [key, j] : entries_) {
        if (key.first == category) {
            sum += j;
        }
    }
    return sum;
}

double EnergyLedger::total() const {
    double sum = 0.0;
    for (const auto& [_, j] : entries_) {
        sum += j;
    }
    return sum;
}

EnergyLedger EnergyLedger::scaled(double factor) const {
    if (!std::isfinite(factor) || factor < 0.0) {
        throw std::invalid_argument("ledger scale factor must be non-negative");
    }
    EnergyLedger out;
    for (const auto& [key, j] : entries_) {
        out.add(key.first, key.second, j * factor);
    }
    return out;
}

EnergyLedger& EnergyLedger::operator+=(const EnergyLedger& other) {
    for (const auto& [key, j] : other.entries_) {
        add(key.first, key.second, j);
    }
    return *this;
}

json ledger_to_json(const EnergyLedger& ledger) {
    json cats = json::object();
    for (const auto& [key, j] : ledger.entries()) {
        cats[std::string(to_string(key.first))][key.second] = j;
    }
    return json{{"categories", std::move(cats)}, {"total_J", ledger.total()}};
}

EnergyLedger ledger_from_json(const json& doc) {
    EnergyLedger ledger;
    for (const auto& [cat, sources] : doc.at("categories").items()) {
        const Category c = category_from_string(cat);
        for (const auto& [src, j] : sources.items()) {
            ledger.add(c, src, j.get<double>());
        }
    }
    return ledger;
}

std::string ledger_to_csv(const EnergyLedger& ledger) {
    std::string out = "category,source,joules\n";
    for (const auto& [key, j] : ledger.entries()) {
        out += fmt::format("{},{},{}\n", to_string(key.first), key.second, j);
    }
    return out;
}

EnergyLedger schedule_energy(const PulseSchedule& schedule, const HardwareProfile& profile) {
    EnergyLedger ledger;
    std::map<std::string, double> on_time;
    for (const auto& step : schedule.steps()) {
        for (const auto& p : step.pulses) {
            if (p.fixed_energy) {
                ledger.add(Category::Computation, to_string(p.purpose), *p.fixed_energy);
            } else {
                on_time[p.source_id] += p.duration;
            }
        }
    }
    for (const auto& [src, t] : on_time) {
        ledger.add(Category::Computation, src, profile.billing_power(src) * t);
    }
    return ledger;
}

int trap_count(int n_qubits, const HardwareProfile& profile) {
    if (profile.traps.array_traps) {
        return *profile.traps.array_traps;
    }
    int side = 0;
    while (side * side < n_qubits) {
        ++side;
    }
    return side * side;
}

namespace {

// Everything except computation and traps, for one shot.
void add_prep_and_measurement(EnergyLedger& ledger, const HardwareProfile& profile) {
    const auto& prep = profile.prep;
    ledger.add(Category::Preparation, source_ids::cooling,
               profile.billing_power(source_ids::cooling) * prep.cooling_duration);
    ledger.add(Category::Preparation, source_ids::pumping,
               profile.billing_power(source_ids::pumping) * prep.pumping_duration);
    ledger.add(Category::Measurement, source_ids::measurement,
               prep.measurement_beam_count * profile.billing_power(source_ids::measurement) *
                   prep.measurement_duration);
}

double trap_active_time(double computation_wall_clock, const HardwareProfile& profile) {
    const auto& prep = profile.prep;
    double t = prep.cooling_duration + prep.pumping_duration + computation_wall_clock;
    if (profile.traps.include_measurement_in_trap_time) {
        t += prep.measurement_duration;
    }
    return t;
}

}  // namespace

EnergyLedger run_energy(const Circuit& circuit, const HardwareProfile& profile, RunOptions options) {
    if (options.shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const PulseSchedule schedule = compile(circuit, profile, options.mode);
    EnergyLedger shot = schedule_energy(schedule, profile);
    add_prep_and_measurement(shot, profile);
    const double trap_time = trap_active_time(schedule_duration(schedule).wall_clock, profile);
    shot.add(Category::Baseline, source_ids::trap,
             trap_count(circuit.n_qubits(), profile) * profile.trap_power_at_source() * trap_time);
    return shot.scaled(static_cast<double>(options.shots));
}

double MeasuredRun::wall_clock() const { return microwave + std::max(laser459, laser1040); }

MeasuredRun h2_phase_estimation_run() {
    return MeasuredRun{615.999 * units::us, 279.581 * units::us, 54.454 * units::us, 700, 4};
}

ExperimentReport reproduce_qpe_experiment(const MeasuredRun& run, const HardwareProfile& profile) {
    if (run.microwave < 0.0 || run.laser459 < 0.0 || run.laser1040 < 0.0) {
        throw std::invalid_argument("measured on-times must be non-negative");
    }
    ExperimentReport r;
    EnergyLedger& shot = r.per_shot;
    shot.add(Category::Computation, source_ids::microwave, profile.billing_power(source_ids::microwave) * run.microwave);
    shot.add(Category::Computation, source_ids::laser459, profile.billing_power(source_ids::laser459) * run.laser459);
    shot.add(Category::Computation, source_ids::laser1040,
             profile.billing_power(source_ids::laser1040) * run.laser1040);
    r.computation_per_shot = shot.category_total(Category::Computation);

    add_prep_and_measurement(shot, profile);
    r.trap_power = trap_count(run.n_qubits, profile) * profile.trap_power_at_source();
    r.trap_time = trap_active_time(run.wall_clock(), profile);
    shot.add(Category::Baseline, source_ids::trap, r.trap_power * r.trap_time);

    r.ledger = shot.scaled(static_cast<double>(run.shots));
    r.computation_total = r.ledger.category_total(Category::Computation);
    r.grand_total = r.ledger.total();
    return r;
}

double gate_energy(NativeGate gate, double angle, const HardwareProfile& profile, CompileMode mode) {
    Circuit c(2);
    switch (gate) {
        case NativeGate::GlobalXY: c.add(GlobalRPhi{0.0, angle}); break;
        case NativeGate::LocalRz: c.add(LocalRz{0, angle}); break;
        case NativeGate::CZ: c.add(CZ{0, 1}); break;
        case NativeGate::Hadamard: c.add(Hadamard{0}); break;
    }
    return schedule_energy(compile(c, profile, mode), profile).total();
}

}  // namespace rydberg
