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

#include "rydberg/classical.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rydberg {

double joules_per_bitop(const ClassicalMachine& machine) {
    if (machine.direct_joules_per_bitop) {
        return *machine.direct_joules_per_bitop;
    }
    if (!machine.performance || !machine.power) {
        throw std::invalid_argument("machine '" + machine.name +
                                    "' needs either joules_per_bitop or both performance and power");
    }
    return *machine.power / *machine.performance / machine.bitops_per_flop;
}

double fft_energy(const ClassicalMachine& machine, std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("FFT size exponent must be >= 1");
    }
    return joules_per_bitop(machine) * std::ldexp(static_cast<double>(n), static_cast<int>(n));
}

std::optional<std::int64_t> find_crossover(const HardwareProfile& profile, const ClassicalMachine& machine,
                                           std::int64_t n_max, std::int64_t n_min, CompileMode mode) {
    for (std::int64_t n = std::max<std::int64_t>(n_min, 1); n <= n_max; ++n) {
        if (total_quantum_energy(n, profile, mode).e_total < fft_energy(machine, n)) {
            return n;
        }
    }
    return std::nullopt;
}

std::vector<ComparisonRow> compare(const HardwareProfile& profile, const ClassicalMachine& machine,
                                   std::int64_t n_min, std::int64_t n_max, CompileMode mode) {
    std::vector<ComparisonRow> rows;
    for (std::int64_t n = std::max<std::int64_t>(n_min, 1); n <= n_max; ++n) {
        ComparisonRow r;
        r.n = n;
        r.quantum = total_quantum_energy(n, profile, mode).e_total;
        r.classical = fft_energy(machine, n);
        r.ratio = r.classical > 0.0 ? r.quantum / r.classical : INFINITY;
        rows.push_back(r);
    }
    return rows;
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "n,E_quantum_J,E_classical_J,ratio\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{}\n", r.n, r.quantum, r.classical, r.ratio);
    }
    return out;
}

void add_classical_columns(ScalingCurve& curve, const std::vector<ClassicalMachine>& machines) {
    for (const auto& m : machines) {
        curve.classical_columns.push_back(m.name);
        for (auto& row : curve.rows) {
            row.classical[m.name] = fft_energy(m, row.energy.n);
        }
    }
}

std::vector<ClassicalMachine> builtin_catalog() {
    return {
        ClassicalMachine{"elcapitan", 1809.00e15, 29685e3, 1000.0, std::nullopt},
        ClassicalMachine{"jedi", std::nullopt, std::nullopt, 1000.0, 1.37e-14},
    };
}

std::vector<ClassicalMachine> catalog_from_json(const nlohmann::json& doc) {
    const auto& list = doc.contains("machines") ? doc.at("machines") : doc;
    if (!list.is_array()) {
        throw std::invalid_argument("machine catalog must be a list or {\"machines\": [...]}");
    }
    std::vector<ClassicalMachine> out;
    for (const auto& e : list) {
        ClassicalMachine m;
        m.name = e.at("name").get<std::string>();
        if (e.contains("pflops")) {
            m.performance = e.at("pflops").get<double>() * 1e15;
        }
        if (e.contains("power_kw")) {
            m.power = e.at("power_kw").get<double>() * 1e3;
        }
        if (e.contains("bitops_per_flop")) {
            m.bitops_per_flop = e.at("bitops_per_flop").get<double>();
        }
        if (e.contains("joules_per_bitop")) {
            m.direct_joules_per_bitop = e.at("joules_per_bitop").get<double>();
        }
        if ((m.performance && !(*m.performance > 0.0)) || (m.power && !(*m.power > 0.0)) ||
            !(m.bitops_per_flop > 0.0) || (m.direct_joules_per_bitop && *m.direct_joules_per_bitop < 0.0)) {
            throw std::invalid_argument("machine '" + m.name + "' has a non-positive figure");
        }
        joules_per_bitop(m);
        out.push_back(std::move(m));
    }
    return out;
}

nlohmann::json catalog_to_json(const std::vector<ClassicalMachine>& machines) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& m : machines) {
        nlohmann::json e{{"name", m.name}, {"bitops_per_flop", m.bitops_per_flop}};
        if (m.performance) {
            e["pflops"] = *m.performance / 1e15;
        }
        if (m.power) {
            e["power_kw"] = *m.power / 1e3;
        }
        if (m.direct_joules_per_bitop) {
            e["joules_per_bitop"] = *m.direct_joules_per_bitop;
        }
        list.push_back(std::move(e));
    }
    return nlohmann::json{{"machines", std::move(list)}};
}

std::vector<ClassicalMachine> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open machine catalog '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return catalog_from_json(nlohmann::json::parse(buf.str()));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed machine catalog '" + path + "': " + e.what());
    }
}

const ClassicalMachine* find_machine(const std::vector<ClassicalMachine>& catalog, std::string_view name) {
    for (const auto& m : catalog) {
        if (m.name == name) {
            return &m;
        }
    }
    return nullptr;
}

}  // namespace rydberg
