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

#include "rydberg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "rydberg/circuit.hpp"
#include "rydberg/classical.hpp"
#include "rydberg/compiler.hpp"
#include "rydberg/energetics.hpp"
#include "rydberg/hwmodel.hpp"
#include "rydberg/layout.hpp"
#include "rydberg/scaling.hpp"

namespace rydberg::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20250101;

// Thrown for bad user input; maps to kUsageError.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Shared {
    std::string profile_path;
    std::string output;
    std::string format;
    std::uint64_t seed = kDefaultSeed;
};

HardwareProfile resolve_profile(const Shared& shared) {
    std::string path = shared.profile_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kProfileEnv); env != nullptr && *env != '\0') {
            path = env;
        }
    }
    return path.empty() ? default_profile() : load_profile(path);
}

std::string format_or(const Shared& shared, const char* fallback) {
    return shared.format.empty() ? std::string(fallback) : shared.format;
}

void emit(const Shared& shared, const std::string& text, std::ostream& out) {
    if (shared.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(shared.output);
    if (!file) {
        throw UsageError("cannot write output file '" + shared.output + "'");
    }
    file << text;
}

std::string num(double v) { return fmt::format("{}", v); }

// ---- circuit specs ------------------------------------------------------

struct CircuitSpec {
    std::optional<Circuit> circuit;
    bool h2 = false;  // measured hydrogen phase-estimation run
    std::string label;
};

CircuitSpec resolve_circuit(const std::string& spec) {
    CircuitSpec out;
    out.label = spec;
    auto parse_count = [&spec](std::string_view digits) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1) {
            throw UsageError("bad circuit shorthand '" + spec + "'");
        }
        return n;
    };
    if (spec.starts_with("qft:")) {
        out.circuit = build_qft(parse_count(std::string_view(spec).substr(4)));
    } else if (spec == "qpe:h2") {
        out.h2 = true;
    } else if (spec.starts_with("qpe:")) {
        OpaqueTimed identity{"U", {}, {}, 1};
        out.circuit = build_qpe(parse_count(std::string_view(spec).substr(4)), 1, identity);
    } else {
        try {
            out.circuit = load_circuit(spec);
        } catch (const CircuitParseError& e) {
            throw UsageError(fmt::format("{}: {}", spec, e.what()));
        }
    }
    return out;
}

CompileMode resolve_mode(const std::string& mode, const HardwareProfile& profile) {
    if (mode.empty()) {
        return profile.calibration.enabled ? CompileMode::Calibrated : CompileMode::FirstPrinciples;
    }
    return compile_mode_from_string(mode);
}

// ---- ledger rendering ------------------------------------------------------

std::string ledger_table(const EnergyLedger& ledger, const std::string& title) {
    std::string out = title.empty() ? std::string() : title + "\n";
    out += fmt::format("{:<12} {:<20} {:>16}\n", "category", "source", "energy [mJ]");
    for (const auto& [key, j] : ledger.entries()) {
        out += fmt::format("{:<12} {:<20} {:>16.6f}\n", to_string(key.first), key.second, j / units::mJ);
    }
    for (auto c : kAllCategories) {
        const double t = ledger.category_total(c);
        if (t > 0.0) {
            out += fmt::format("{:<12} {:<20} {:>16.6f}\n", to_string(c), "(subtotal)", t / units::mJ);
        }
    }
    out += fmt::format("{:<33} {:>16.6f}\n", "total", ledger.total() / units::mJ);
    return out;
}

std::string render_ledger(const EnergyLedger& ledger, const std::string& format, const json& meta,
                          const std::string& title) {
    if (format == "json") {
        json doc = ledger_to_json(ledger);
        for (const auto& [k, v] : meta.items()) {
            doc[k] = v;
        }
        return doc.dump(2) + "\n";
    }
    if (format == "csv") {
        return ledger_to_csv(ledger);
    }
    return ledger_table(ledger, title);
}

// ---- golden tables --------------------------------------------------------

struct GoldenCell {
    std::string table;
    std::string label;
    std::string unit;
    double value = 0.0;     // in `unit`
    double expected = 0.0;  // as displayed
    int decimals = 0;
    std::optional<double> relative_tolerance;

    [[nodiscard]] bool ok() const {
        if (relative_tolerance) {
            return std::abs(value - expected) <= *relative_tolerance * std::abs(expected);
        }
        // Within half a unit in the last displayed place.
        const double half_ulp = 0.5 * std::pow(10.0, -decimals);
        return std::abs(value - expected) <= half_ulp * (1.0 + 1e-9);
    }
};

std::vector<GoldenCell> golden_cells(const ExperimentReport& r, const HardwareProfile& profile,
                                     const MeasuredRun& run, const std::string& which) {
    std::vector<GoldenCell> cells;
    const auto& shot = r.per_shot;
    if (which == "computation" || which == "all") {
        const auto row = [&](const char* label, std::string_view src, double t_us, double p_mw, double e_mj) {
            cells.push_back({"computation", std::string(label) + " time", "us", t_us, t_us, 3, {}});
            cells.push_back({"computation", std::string(label) + " power", "mW",
                             profile.billing_power(src) / units::mW, p_mw, 1, {}});
            cells.push_back({"computation", std::string(label) + " energy", "mJ",
                             shot.at(Category::Computation, src) / units::mJ, e_mj, 3, {}});
        };
        row("Microwave", source_ids::microwave, run.microwave / units::us, 57.4, 0.035);
        row("459 nm laser", source_ids::laser459, run.laser459 / units::us, 100.0, 0.028);
        row("1040 nm", source_ids::laser1040, run.laser1040 / units::us, 1.1e4, 0.599);
        cells.push_back({"computation", "per-shot total", "mJ", r.computation_per_shot / units::mJ, 0.662, 3, {}});
        cells.push_back({"computation", fmt::format("{}-shot total", run.shots), "mJ",
                         r.computation_total / units::mJ, 463.4, 1, 0.005});
    }
    if (which == "baseline" || which == "all") {
        const auto& prep = profile.prep;
        const double meas_power = prep.measurement_beam_count * profile.billing_power(source_ids::measurement);
        const auto row = [&](const char* label, double p_w, double t_s, double e_j, double p_exp, int p_dec,
                             double t_exp, int t_dec, double e_exp, int e_dec) {
            cells.push_back({"baseline", std::string(label) + " power", "mW", p_w / units::mW, p_exp, p_dec, {}});
            cells.push_back({"baseline", std::string(label) + " time", "ms", t_s / units::ms, t_exp, t_dec, {}});
            cells.push_back({"baseline", std::string(label) + " energy", "mJ", e_j / units::mJ, e_exp, e_dec, {}});
        };
        row("Optical traps", r.trap_power, r.trap_time, shot.at(Category::Baseline, source_ids::trap), 490, 0, 110.9, 1,
            54.34, 2);
        row("Measurement", meas_power, prep.measurement_duration,
            shot.at(Category::Measurement, source_ids::measurement), 0.880, 3, 90, 0, 0.0792, 4);
        row("Initialization", profile.billing_power(source_ids::pumping), prep.pumping_duration,
            shot.at(Category::Preparation, source_ids::pumping), 1, 0, 10, 0, 0.01, 2);
        row("Cooling", profile.billing_power(source_ids::cooling), prep.cooling_duration,
            shot.at(Category::Preparation, source_ids::cooling), 1, 0, 100, 0, 0.1, 1);
    }
    if (which == "all") {
        cells.push_back({"all", fmt::format("{}-shot grand total", run.shots), "J", r.grand_total, 38.63, 2, 0.001});
    }
    return cells;
}

std::string render_golden(const std::vector<GoldenCell>& cells, const std::string& format) {
    if (format == "json") {
        json list = json::array();
        for (const auto& c : cells) {
            list.push_back({{"table", c.table},
                            {"cell", c.label},
                            {"unit", c.unit},
                            {"value", c.value},
                            {"expected", c.expected},
                            {"decimals", c.decimals},
                            {"ok", c.ok()}});
        }
        return json{{"cells", list}}.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "table,cell,unit,value,expected,ok\n";
        for (const auto& c : cells) {
            out += fmt::format("{},{},{},{},{},{}\n", c.table, c.label, c.unit, num(c.value), num(c.expected),
                               c.ok() ? 1 : 0);
        }
        return out;
    }
    std::string out;
    std::string current;
    for (const auto& c : cells) {
        if (c.table != current) {
            current = c.table;
            out += fmt::format("{}[{}]\n", out.empty() ? "" : "\n", current);
        }
        out += fmt::format("  {:<28} {:>12.{}f} {:<3} (expected {:.{}f}) {}\n", c.label, c.value, c.decimals, c.unit,
                           c.expected, c.decimals, c.ok() ? "ok" : "MISMATCH");
    }
    return out;
}

// ---- commands ---------------------------------------------------------------

int cmd_estimate(const Shared& shared, const std::string& spec, std::optional<int> shots, const std::string& mode_name,
                 bool measured, std::ostream& out) {
    const HardwareProfile profile = resolve_profile(shared);
    const CircuitSpec c = resolve_circuit(spec);
    const std::string format = format_or(shared, "table");
    if (c.h2 || measured) {
        if (!c.h2) {
            throw UsageError("--measured applies only to qpe:h2");
        }
        MeasuredRun run = h2_phase_estimation_run();
        if (shots) {
            run.shots = *shots;
        }
        const ExperimentReport r = reproduce_qpe_experiment(run, profile);
        const json meta{{"circuit", spec}, {"shots", run.shots}, {"mode", "measured"}};
        emit(shared, render_ledger(r.ledger, format, meta, fmt::format("{} (measured on-times, {} shots)", spec, run.shots)),
             out);
        return kOk;
    }
    const CompileMode mode = resolve_mode(mode_name, profile);
    const int n_shots = shots.value_or(profile.prep.shots);
    if (n_shots < 1) {
        throw UsageError("--shots must be >= 1");
    }
    const EnergyLedger ledger = run_energy(*c.circuit, profile, RunOptions{n_shots, mode});
    const json meta{{"circuit", spec}, {"shots", n_shots}, {"mode", std::string(to_string(mode))}};
    emit(shared,
         render_ledger(ledger, format, meta, fmt::format("{} ({}, {} shots)", spec, to_string(mode), n_shots)),
         out);
    return kOk;
}

std::string qubit_list(const std::vector<Qubit>& qs) {
    std::string s;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        s += fmt::format("{}{}", i ? " " : "", qs[i]);
    }
    return s;
}

int cmd_compile(const Shared& shared, const std::string& spec, const std::string& mode_name, std::ostream& out) {
    const HardwareProfile profile = resolve_profile(shared);
    const CircuitSpec c = resolve_circuit(spec);
    if (!c.circuit) {
        throw UsageError("qpe:h2 is a measured run and cannot be compiled");
    }
    const CompileMode mode = resolve_mode(mode_name, profile);
    const PulseSchedule schedule = compile(*c.circuit, profile, mode);
    const ScheduleDuration d = schedule_duration(schedule);
    const std::string format = format_or(shared, "table");
    std::string text;
    if (format == "json") {
        json steps = json::array();
        for (const auto& step : schedule.steps()) {
            json pulses = json::array();
            for (const auto& p : step.pulses) {
                json jp{{"source", p.source_id},
                        {"duration_s", p.duration},
                        {"purpose", std::string(to_string(p.purpose))},
                        {"qubits", p.qubits}};
                if (p.fixed_energy) {
                    jp["energy_J"] = *p.fixed_energy;
                }
                pulses.push_back(std::move(jp));
            }
            steps.push_back(std::move(pulses));
        }
        text = json{{"mode", std::string(to_string(mode))},
                    {"steps", std::move(steps)},
                    {"on_time_s", d.on_time},
                    {"wall_clock_s", d.wall_clock}}
                   .dump(2) +
               "\n";
    } else if (format == "csv") {
        text = "step,source,purpose,qubits,duration_s\n";
        for (std::size_t i = 0; i < schedule.steps().size(); ++i) {
            for (const auto& p : schedule.steps()[i].pulses) {
                text += fmt::format("{},{},{},{},{}\n", i, p.source_id, to_string(p.purpose), qubit_list(p.qubits),
                                    num(p.duration));
            }
        }
    } else {
        text = fmt::format("{:>6} {:<12} {:<15} {:<12} {:>14}\n", "step", "source", "purpose", "qubits",
                           "duration [us]");
        for (std::size_t i = 0; i < schedule.steps().size(); ++i) {
            for (const auto& p : schedule.steps()[i].pulses) {
                text += fmt::format("{:>6} {:<12} {:<15} {:<12} {:>14.4f}\n", i, p.source_id, to_string(p.purpose),
                                    qubit_list(p.qubits), p.duration / units::us);
            }
        }
        for (const auto& [src, t] : d.on_time) {
            text += fmt::format("on-time {:<12} {:>14.4f} us\n", src, t / units::us);
        }
        text += fmt::format("wall-clock {:>23.4f} us\n", d.wall_clock / units::us);
    }
    emit(shared, text, out);
    return kOk;
}

int cmd_reproduce(const Shared& shared, const std::string& table, std::ostream& out, std::ostream& err) {
    const HardwareProfile profile = resolve_profile(shared);
    const MeasuredRun run = h2_phase_estimation_run();
    const ExperimentReport r = reproduce_qpe_experiment(run, profile);
    const auto cells = golden_cells(r, profile, run, table);
    emit(shared, render_golden(cells, format_or(shared, "table")), out);
    int bad = 0;
    for (const auto& c : cells) {
        if (!c.ok()) {
            err << fmt::format("mismatch: [{}] {} = {} {} (expected {})\n", c.table, c.label, num(c.value), c.unit,
                               num(c.expected));
            ++bad;
        }
    }
    return bad == 0 ? kOk : kGoldenMismatch;
}

struct ScaleArgs {
    std::int64_t n_min = 1;
    std::int64_t n_max = 100;
    std::int64_t step = 1;
    int points = 0;
    bool fit = false;
    bool closed_form = false;
    std::vector<std::string> machines;
    std::string mode;
};

const ClassicalMachine& machine_or_throw(const std::vector<ClassicalMachine>& catalog, const std::string& name) {
    if (const auto* m = find_machine(catalog, name)) {
        return *m;
    }
    std::string names;
    for (const auto& m : catalog) {
        names += (names.empty() ? "" : ", ") + m.name;
    }
    throw UsageError("unknown machine '" + name + "'; catalog: " + names);
}

int cmd_scale(const Shared& shared, const ScaleArgs& a, std::ostream& out, std::ostream& err) {
    const HardwareProfile profile = resolve_profile(shared);
    const CompileMode mode = resolve_mode(a.mode, profile);
    if (a.n_min < 1 || a.n_max < a.n_min) {
        throw UsageError("empty range: need 1 <= --n-min <= --n-max");
    }
    const auto ns = a.points > 0 ? log_range(a.n_min, a.n_max, a.points) : linear_range(a.n_min, a.n_max, a.step);
    ScalingCurve curve = scaling_curve(ns, profile, mode);
    if (!a.machines.empty()) {
        const auto catalog = builtin_catalog();
        std::vector<ClassicalMachine> picked;
        for (const auto& name : a.machines) {
            picked.push_back(machine_or_throw(catalog, name));
        }
        add_classical_columns(curve, picked);
    }

    std::map<std::string, double> exponents;
    std::optional<std::int64_t> onset;
    if (a.fit) {
        if (curve.rows.size() < 10) {
            err << "fit skipped: needs at least 10 rows\n";
        } else {
            for (auto c : {Component::Gates, Component::Transport, Component::Traps, Component::Total}) {
                // n = 1 has no transport term
                exponents[std::string(to_string(c))] =
                    fit_exponent(curve, c, std::max<std::int64_t>(a.n_min, 2), a.n_max);
            }
        }
        onset = ordering_onset(profile, a.n_max, mode);
    }

    const std::string format = format_or(shared, "csv");
    std::string text;
    if (format == "json") {
        json doc = curve_to_json(curve);
        if (!exponents.empty()) {
            doc["exponents"] = exponents;
        }
        if (a.fit) {
            doc["ordering_onset"] = nullptr;
            if (onset) {
                doc["ordering_onset"] = *onset;
            }
        }
        text = doc.dump(2) + "\n";
    } else if (format == "csv") {
        text = curve_to_csv(curve);
        for (const auto& [k, v] : exponents) {
            text += fmt::format("# exponent,{},{}\n", k, num(v));
        }
        if (a.fit) {
            text += fmt::format("# ordering_onset,{}\n", onset ? std::to_string(*onset) : "none");
        }
    } else {
        text = fmt::format("{:>8} {:>14} {:>14} {:>14} {:>14} {:>14} {:>12}\n", "n", "E_gates [J]", "E_transport [J]",
                           "E_traps [J]", "E_const [J]", "E_total [J]", "t_qft [s]");
        for (const auto& row : curve.rows) {
            const auto& e = row.energy;
            text += fmt::format("{:>8} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.6e}\n", e.n, e.e_gates,
                                e.e_transport, e.e_traps, e.e_const, e.e_total, e.t_qft);
        }
        for (const auto& [k, v] : exponents) {
            text += fmt::format("exponent {:<10} {:.4f}\n", k, v);
        }
        if (a.fit) {
            text += onset ? fmt::format("E_traps > E_transport > E_gates for n in [{}, {}]\n", *onset, a.n_max)
                          : fmt::format("E_traps > E_transport > E_gates does not hold at n = {}\n", a.n_max);
        }
    }
    if (a.closed_form) {
        const auto checks = closed_form_check(std::min<std::int64_t>(a.n_max, 60));
        std::string report = "rotation-sum check: direct vs 2n-4+2^(2-n) vs 4(n-1+2^-n)\n";
        int flagged = 0;
        for (const auto& c : checks) {
            if (c.printed_relative_error > 1e-12) {
                ++flagged;
            }
        }
        for (const auto& c : checks) {
            if (c.n <= 6 || c.n == checks.back().n) {
                report += fmt::format("  n={:<3} direct={} derived={} printed={} printed_rel_err={}\n", c.n,
                                      num(c.direct), num(c.derived), num(c.printed), num(c.printed_relative_error));
            }
        }
        report += fmt::format("printed closed form deviates from the direct sum at {} of {} n values\n", flagged,
                              checks.size());
        err << report;
    }
    emit(shared, text, out);
    return kOk;
}

int cmd_compare(const Shared& shared, const std::vector<std::string>& machine_names, const std::string& catalog_path,
                std::int64_t n_min, std::int64_t n_max, const std::string& mode_name, std::ostream& out) {
    const HardwareProfile profile = resolve_profile(shared);
    const CompileMode mode = resolve_mode(mode_name, profile);
    std::vector<ClassicalMachine> catalog;
    try {
        catalog = catalog_path.empty() ? builtin_catalog() : load_catalog(catalog_path);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::vector<ClassicalMachine> machines;
    if (machine_names.empty()) {
        if (!catalog_path.empty()) {
            machines = catalog;
        } else {
            machines.push_back(machine_or_throw(catalog, "jedi"));
        }
    } else {
        for (const auto& name : machine_names) {
            machines.push_back(machine_or_throw(catalog, name));
        }
    }
    const std::string format = format_or(shared, "csv");
    std::string text;
    json doc = json::object();
    for (const auto& m : machines) {
        const auto rows = compare(profile, m, n_min, n_max, mode);
        const std::optional<std::int64_t> crossover = find_crossover(profile, m, n_max, n_min, mode);
        const std::string cross = crossover ? std::to_string(*crossover) : "none";
        if (format == "json") {
            json list = json::array();
            for (const auto& r : rows) {
                list.push_back({{"n", r.n}, {"E_quantum_J", r.quantum}, {"E_classical_J", r.classical}, {"ratio", r.ratio}});
            }
            json entry{{"joules_per_bitop", joules_per_bitop(m)}, {"rows", std::move(list)}, {"crossover", nullptr}};
            if (crossover) {
                entry["crossover"] = crossover.value_or(0);
            }
            doc[m.name] = std::move(entry);
        } else if (format == "csv") {
            if (machines.size() > 1) {
                text += "# machine," + m.name + "\n";
            }
            text += comparison_to_csv(rows);
            text += fmt::format("# crossover,{},{}\n", m.name, cross);
        } else {
            text += fmt::format("{} ({} J/bit-op)\n", m.name, num(joules_per_bitop(m)));
            text += fmt::format("{:>6} {:>16} {:>16} {:>14}\n", "n", "E_quantum [J]", "E_classical [J]", "ratio");
            for (const auto& r : rows) {
                text += fmt::format("{:>6} {:>16.6e} {:>16.6e} {:>14.6e}\n", r.n, r.quantum, r.classical, r.ratio);
            }
            text += fmt::format("crossover: {}\n", cross);
        }
    }
    if (format == "json") {
        text = doc.dump(2) + "\n";
    }
    emit(shared, text, out);
    return kOk;
}

struct SimArgs {
    int n = 25;
    std::int64_t gates = 10000;
    std::string policy = "move_adjacent_and_return";
    double blockade_radius = 1.0;
    std::string summary_path;
};

int cmd_transport_sim(const Shared& shared, const SimArgs& a, std::ostream& out, std::ostream& err) {
    if (a.n < 2) {
        throw UsageError("--n must be >= 2");
    }
    if (a.gates < 0 || !(a.blockade_radius > 0.0)) {
        throw UsageError("--gates must be >= 0 and --blockade-radius > 0");
    }
    const HardwareProfile profile = resolve_profile(shared);
    TransportSimConfig config;
    config.n_atoms = a.n;
    config.gates = a.gates;
    config.policy = transport_policy_from_string(a.policy);
    config.blockade_radius = a.blockade_radius;
    config.seed = shared.seed;
    const TransportSimResult result = simulate_transports(config);
    const json summary = transport_summary_json(result, config, profile.transport.transports_per_gate_slope);
    if (!a.summary_path.empty()) {
        std::ofstream file(a.summary_path);
        if (!file) {
            throw UsageError("cannot write summary file '" + a.summary_path + "'");
        }
        file << summary.dump(2) << '\n';
    }
    const std::string format = format_or(shared, "csv");
    std::string text;
    if (format == "json") {
        text = summary.dump(2) + "\n";
    } else if (format == "csv") {
        text = transport_trace_csv(result);
        err << fmt::format("seed {}: slope {} transports/gate, R^2 {}, analytic slope {}\n", config.seed,
                           num(result.fit.slope), num(result.fit.r_squared),
                           num(profile.transport.transports_per_gate_slope));
    } else {
        text = fmt::format(
            "atoms            {}\ngates            {}\npolicy           {}\nblockade radius  {}\nseed             {}\n"
            "transports       {}\nhops (Manhattan) {}\ndistance (Eucl.) {:.3f}\nslope            {:.6f}\n"
            "R^2              {:.6f}\nanalytic slope   {}\n",
            config.n_atoms, config.gates, to_string(config.policy), config.blockade_radius, config.seed,
            result.transports, result.hops, result.distance, result.fit.slope, result.fit.r_squared,
            num(profile.transport.transports_per_gate_slope));
    }
    emit(shared, text, out);
    return kOk;
}

int cmd_qft_build(const Shared& shared, int n, bool inverse_qft, bool swaps, bool correction, std::ostream& out) {
    if (n < 1) {
        throw UsageError("QFT size must be >= 1");
    }
    const QftOptions options{swaps, correction};
    const Circuit c = inverse_qft ? build_inverse_qft(n, options) : build_qft(n, options);
    emit(shared, to_text(c), out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy and resource estimator for Rydberg-atom quantum computers", "rydberg-energy"};
    app.require_subcommand(1);

    Shared shared;
    app.add_option("--profile", shared.profile_path,
                   std::string("Hardware profile (JSON); defaults to $") + kProfileEnv + " or the built-in profile");
    app.add_option("--output,-o", shared.output, "Write the report to this file instead of stdout");
    app.add_option("--format", shared.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--seed", shared.seed, "Random seed")->capture_default_str();

    // estimate
    std::string est_spec;
    std::optional<int> est_shots;
    std::string est_mode;
    bool est_measured = false;
    auto* estimate = app.add_subcommand("estimate", "Energy ledger for a circuit (qft:N, qpe:T, qpe:h2 or a file)");
    estimate->add_option("circuit", est_spec, "Circuit spec")->required();
    estimate->add_option("--shots", est_shots, "Repetitions (defaults to the profile's shot count)");
    estimate->add_option("--mode", est_mode, "calibrated | first_principles")
        ->check(CLI::IsMember({"calibrated", "first_principles", "first-principles"}));
    estimate->add_flag("--measured", est_measured, "Use the measured on-times (qpe:h2)");

    // compile
    std::string cmp_spec;
    std::string cmp_mode;
    auto* compile_cmd = app.add_subcommand("compile", "Pulse schedule for a circuit");
    compile_cmd->add_option("circuit", cmp_spec, "Circuit spec")->required();
    compile_cmd->add_option("--mode", cmp_mode, "calibrated | first_principles")
        ->check(CLI::IsMember({"calibrated", "first_principles", "first-principles"}));

    // reproduce
    std::string rep_table = "all";
    auto* reproduce = app.add_subcommand("reproduce", "Reproduce the phase-estimation energy tables");
    reproduce->add_option("--table", rep_table, "computation | baseline | all")
        ->check(CLI::IsMember({"computation", "baseline", "all"}))
        ->capture_default_str();

    // scale
    ScaleArgs scale_args;
    auto* scale = app.add_subcommand("scale", "QFT energy versus qubit count");
    scale->add_option("--n-min", scale_args.n_min)->capture_default_str();
    scale->add_option("--n-max", scale_args.n_max)->capture_default_str();
    scale->add_option("--step", scale_args.step)->check(CLI::PositiveNumber)->capture_default_str();
    scale->add_option("--points", scale_args.points, "Use this many log-spaced points instead of --step");
    scale->add_flag("--fit", scale_args.fit, "Report log-log exponents per component");
    scale->add_flag("--closed-form", scale_args.closed_form, "Report the rotation-sum closed-form check on stderr");
    scale->add_option("--machine", scale_args.machines, "Add a classical FFT column");
    scale->add_option("--mode", scale_args.mode)->check(CLI::IsMember({"calibrated", "first_principles"}));

    // compare
    std::vector<std::string> cmp_machines;
    std::string cmp_catalog;
    std::int64_t cmp_n_min = 1;
    std::int64_t cmp_n_max = 60;
    std::string cmp_mode2;
    auto* compare_cmd = app.add_subcommand("compare", "Quantum QFT versus classical FFT energy");
    compare_cmd->add_option("--machine", cmp_machines, "Machine name (default jedi)");
    compare_cmd->add_option("--catalog", cmp_catalog, "Machine catalog (JSON)");
    compare_cmd->add_option("--n-min", cmp_n_min)->capture_default_str();
    compare_cmd->add_option("--n-max", cmp_n_max)->capture_default_str();
    compare_cmd->add_option("--mode", cmp_mode2)->check(CLI::IsMember({"calibrated", "first_principles"}));

    // transport-sim
    SimArgs sim;
    auto* transport = app.add_subcommand("transport-sim", "Monte-Carlo atom transport count");
    transport->add_option("--n", sim.n)->capture_default_str();
    transport->add_option("--gates", sim.gates)->capture_default_str();
    transport->add_option("--policy", sim.policy)
        ->check(CLI::IsMember({"move_adjacent_and_return", "move_adjacent_stay"}))
        ->capture_default_str();
    transport->add_option("--blockade-radius", sim.blockade_radius, "Cells, diagonals included")
        ->capture_default_str();
    transport->add_option("--summary", sim.summary_path, "Also write the JSON summary here");

    // qft-build
    int qft_n = 0;
    bool qft_inverse = false;
    bool qft_swaps = false;
    bool qft_correction = false;
    auto* qft = app.add_subcommand("qft-build", "Emit a QFT circuit in the text format");
    qft->add_option("n", qft_n, "Qubit count")->required();
    qft->add_flag("--inverse", qft_inverse);
    qft->add_flag("--swaps", qft_swaps, "Append the final swap layer");
    qft->add_flag("--phase-correction", qft_correction, "Make each rotation an exact controlled phase");

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*estimate) {
            return cmd_estimate(shared, est_spec, est_shots, est_mode, est_measured, out);
        }
        if (*compile_cmd) {
            return cmd_compile(shared, cmp_spec, cmp_mode, out);
        }
        if (*reproduce) {
            return cmd_reproduce(shared, rep_table, out, err);
        }
        if (*scale) {
            return cmd_scale(shared, scale_args, out, err);
        }
        if (*compare_cmd) {
            return cmd_compare(shared, cmp_machines, cmp_catalog, cmp_n_min, cmp_n_max, cmp_mode2, out);
        }
        if (*transport) {
            return cmd_transport_sim(shared, sim, out, err);
        }
        if (*qft) {
            return cmd_qft_build(shared, qft_n, qft_inverse, qft_swaps, qft_correction, out);
        }
    } catch (const ProfileError& e) {
        err << "profile error: " << e.what() << '\n';
        return kProfileError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const CircuitParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace rydberg::cli
