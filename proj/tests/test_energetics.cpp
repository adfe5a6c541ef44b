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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rydberg/energetics.hpp"

namespace rydberg {
namespace {

using oracle::kPi;

Circuit random_circuit(std::mt19937_64& rng, int n, int gates) {
    std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
    std::uniform_int_distribution<int> q(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 6);
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        const int a = q(rng);
        const int b = (a + 1 + std::uniform_int_distribution<int>(0, n - 2)(rng)) % n;
        switch (kind(rng)) {
            case 0: c.add(Hadamard{a}); break;
            case 1: c.add(ControlledRz{a, b, ang(rng)}); break;
            case 2: c.add(CZ{a, b}); break;
            case 3: c.add(LocalRz{a, ang(rng)}); break;
            case 4: c.add(LocalRPhi{a, ang(rng), ang(rng)}); break;
            case 5: c.add(GlobalRPhi{ang(rng), ang(rng)}); break;
            default: c.add(Swap{a, b}); break;
        }
    }
    return c;
}

HardwareProfile random_profile(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> scale(0.2, 5.0);
    std::uniform_real_distribution<double> loss(0.0, 0.9);
    HardwareProfile p = default_profile();
    for (auto& [id, s] : p.sources) {
        s.power_at_source *= scale(rng);
        s.loss_fraction = loss(rng);
    }
    p.gates.rabi_global *= scale(rng);
    p.gates.rabi_rz *= scale(rng);
    p.gates.rabi_cz *= scale(rng);
    p.calibration.e_hadamard *= scale(rng);
    p.calibration.e_cz *= scale(rng);
    p.prep.cooling_duration *= scale(rng);
    p.traps.include_measurement_in_trap_time = scale(rng) > 2.5;
    if (scale(rng) > 2.5) {
        p.traps.array_traps.reset();
    }
    validate(p);
    return p;
}

void expect_ledgers_near(const EnergyLedger& a, const EnergyLedger& b, double rel) {
    ASSERT_EQ(a.entries().size(), b.entries().size());
    for (const auto& [key, v] : a.entries()) {
        const double w = b.at(key.first, key.second);
        EXPECT_NEAR(v, w, rel * std::max(std::abs(v), std::abs(w))) << to_string(key.first) << "/" << key.second;
    }
}

TEST(Ledger, AddAndTotals) {
    EnergyLedger l;
    l.add(Category::Computation, "laser459", 1.0);
    l.add(Category::Computation, "laser459", 0.5);
    l.add(Category::Baseline, "trap", 2.0);
    l.add(Category::Preparation, "cooling", 0.0);
    EXPECT_DOUBLE_EQ(l.at(Category::Computation, "laser459"), 1.5);
    EXPECT_DOUBLE_EQ(l.at(Category::Measurement, "nothing"), 0.0);
    EXPECT_DOUBLE_EQ(l.category_total(Category::Computation), 1.5);
    EXPECT_DOUBLE_EQ(l.total(), 3.5);
    EXPECT_EQ(l.entries().size(), 2u);
    EXPECT_THROW(l.add(Category::Baseline, "trap", -1e-9), std::invalid_argument);
    EXPECT_THROW(l.add(Category::Baseline, "trap", NAN), std::invalid_argument);
    EXPECT_THROW(l.scaled(-1.0), std::invalid_argument);
}

TEST(Ledger, Algebra) {
    EnergyLedger a;
    a.add(Category::Computation, "x", 1.0);
    EnergyLedger b;
    b.add(Category::Computation, "x", 2.0);
    b.add(Category::Transport, "tweezer", 3.0);
    const EnergyLedger s = a + b;
    EXPECT_DOUBLE_EQ(s.at(Category::Computation, "x"), 3.0);
    EXPECT_DOUBLE_EQ(s.total(), 6.0);
    EXPECT_EQ(a + b, b + a);
    EXPECT_DOUBLE_EQ(s.scaled(2.0).total(), 12.0);
    EXPECT_EQ(s.scaled(1.0), s);
}

TEST(Ledger, TotalEqualsSumOfCategories) {
    auto rng = oracle::rng(31);
    for (int t = 0; t < 20; ++t) {
        const HardwareProfile p = random_profile(rng);
        const EnergyLedger l = run_energy(random_circuit(rng, 3, 15), p, {3, CompileMode::FirstPrinciples});
        double sum = 0;
        for (auto c : kAllCategories) {
            sum += l.category_total(c);
        }
        EXPECT_NEAR(l.total(), sum, 1e-15 * l.total());
    }
}

TEST(Ledger, JsonAndCsv) {
    const EnergyLedger l = run_energy(build_qft(3), default_profile(), {5, CompileMode::FirstPrinciples});
    EXPECT_EQ(ledger_from_json(ledger_to_json(l)), l);
    EXPECT_EQ(ledger_from_json(nlohmann::json::parse(ledger_to_json(l).dump())), l);
    const std::string csv = ledger_to_csv(l);
    EXPECT_EQ(csv.rfind("category,source,joules\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(l.entries().size() + 1));
    EXPECT_DOUBLE_EQ(ledger_to_json(l)["total_J"].get<double>(), l.total());
    EXPECT_EQ(category_from_string("transport"), Category::Transport);
    EXPECT_THROW(category_from_string("lunch"), std::invalid_argument);
}

TEST(Energetics, ScheduleEnergyPerSource) {
    const HardwareProfile p = default_profile();
    PulseSchedule s;
    s.add({"microwave", 615.999e-6, PulsePurpose::GlobalXY, {0}, {}});
    s.add({"laser1040", 54.454e-6, PulsePurpose::CzTwoPhoton, {0, 1}, {}});
    const EnergyLedger l = schedule_energy(s, p);
    EXPECT_NEAR(l.at(Category::Computation, "microwave"), 57.4e-3 * 615.999e-6, 1e-18);
    EXPECT_NEAR(l.at(Category::Computation, "microwave") / 1e-3, 0.035, 0.0005);
    EXPECT_NEAR(l.at(Category::Computation, "laser1040") / 1e-3, 0.599, 0.0005);
    EXPECT_TRUE(schedule_energy(PulseSchedule{}, p).empty());
}

TEST(Energetics, ScheduleEnergyAdditive) {
    auto rng = oracle::rng(32);
    for (int t = 0; t < 25; ++t) {
        const HardwareProfile p = random_profile(rng);
        const auto mode = t % 2 ? CompileMode::Calibrated : CompileMode::FirstPrinciples;
        const PulseSchedule s1 = compile(random_circuit(rng, 3, 10), p, mode);
        const PulseSchedule s2 = compile(random_circuit(rng, 3, 10), p, mode);
        PulseSchedule both = s1;
        both.append(s2);
        expect_ledgers_near(schedule_energy(both, p), schedule_energy(s1, p) + schedule_energy(s2, p), 1e-12);
    }
}

TEST(Energetics, ScheduleEnergyInvariantUnderReordering) {
    const HardwareProfile p = default_profile();
    const PulseSchedule s = compile(build_qft(4), p, CompileMode::FirstPrinciples);
    PulseSchedule rev;
    for (auto it = s.steps().rbegin(); it != s.steps().rend(); ++it) {
        rev.add_group(it->pulses);
    }
    expect_ledgers_near(schedule_energy(rev, p), schedule_energy(s, p), 1e-12);
}

TEST(Energetics, RunEnergyLinearInShots) {
    auto rng = oracle::rng(33);
    for (int t = 0; t < 25; ++t) {
        const HardwareProfile p = random_profile(rng);
        const Circuit c = random_circuit(rng, 1 + t % 4 + (t % 4 == 0), 12);
        const auto mode = t % 2 ? CompileMode::Calibrated : CompileMode::FirstPrinciples;
        const int k = 1 + t % 7;
        const EnergyLedger one = run_energy(c, p, {3, mode});
        const EnergyLedger many = run_energy(c, p, {3 * k, mode});
        expect_ledgers_near(many, one.scaled(k), 1e-12);
        for (const auto& [key, v] : many.entries()) {
            EXPECT_GE(v, 0.0);
        }
    }
    EXPECT_THROW(run_energy(build_qft(2), default_profile(), {0, CompileMode::Calibrated}), std::invalid_argument);
}

TEST(Energetics, EmptyCircuitOneShot) {
    const HardwareProfile p = default_profile();
    const EnergyLedger l = run_energy(Circuit(4), p, {1, CompileMode::Calibrated});
    EXPECT_EQ(l.category_total(Category::Computation), 0.0);
    EXPECT_NEAR(l.at(Category::Preparation, "cooling"), 1e-3 * 0.1, 1e-18);
    EXPECT_NEAR(l.at(Category::Preparation, "pumping"), 1e-3 * 0.01, 1e-18);
    EXPECT_NEAR(l.at(Category::Measurement, "measurement"), 4 * 220e-6 * 0.09, 1e-15);
    EXPECT_NEAR(l.at(Category::Baseline, "trap"), 49 * 10e-3 * 0.11, 1e-15);
}

TEST(Energetics, TrapCount) {
    HardwareProfile p = default_profile();
    EXPECT_EQ(trap_count(4, p), 49);
    p.traps.array_traps.reset();
    EXPECT_EQ(trap_count(4, p), 4);
    EXPECT_EQ(trap_count(5, p), 9);
    EXPECT_EQ(trap_count(1, p), 1);
}

TEST(Energetics, MeasurementInTrapTimeFlag) {
    HardwareProfile p = default_profile();
    const double off = run_energy(Circuit(2), p, {1, CompileMode::Calibrated}).at(Category::Baseline, "trap");
    p.traps.include_measurement_in_trap_time = true;
    const double on = run_energy(Circuit(2), p, {1, CompileMode::Calibrated}).at(Category::Baseline, "trap");
    EXPECT_NEAR(on - off, 49 * 10e-3 * 0.09, 1e-15);
}

TEST(Energetics, QftOneComputationIsHadamard) {
    const EnergyLedger l = run_energy(build_qft(1), default_profile(), {1, CompileMode::Calibrated});
    EXPECT_DOUBLE_EQ(l.category_total(Category::Computation), 4.98e-6);
}

TEST(Energetics, ExperimentReproduction) {
    const HardwareProfile p = default_profile();
    const MeasuredRun run = h2_phase_estimation_run();
    EXPECT_EQ(run.shots, 700);
    EXPECT_NEAR(run.wall_clock(), 615.999e-6 + 279.581e-6, 1e-15);
    const ExperimentReport r = reproduce_qpe_experiment(run, p);
    // Independent recomputation from the published inputs.
    const double mw = 57.4e-3 * 615.999e-6;
    const double l459 = 100e-3 * 279.581e-6;
    const double l1040 = 11.0 * 54.454e-6;
    EXPECT_NEAR(r.computation_per_shot, mw + l459 + l1040, 1e-15);
    EXPECT_NEAR(r.computation_per_shot / 1e-3, 0.662, 0.0005);
    EXPECT_NEAR(r.computation_total / 1e-3, 463.4, 463.4 * 0.005);
    EXPECT_NEAR(r.trap_power, 0.49, 1e-15);
    EXPECT_NEAR(r.trap_time, 0.1 + 0.01 + 615.999e-6 + 279.581e-6, 1e-15);
    EXPECT_NEAR(r.trap_time / 1e-3, 110.9, 0.05);
    const double per_shot = mw + l459 + l1040 + 0.49 * r.trap_time + 1e-3 * 0.11 + 4 * 220e-6 * 0.09;
    EXPECT_NEAR(r.grand_total, 700 * per_shot, 1e-12);
    EXPECT_NEAR(r.grand_total, 38.63, 38.63 * 0.001);
    EXPECT_NEAR(r.ledger.total(), r.grand_total, 1e-12);
    expect_ledgers_near(r.ledger, r.per_shot.scaled(700), 1e-12);
}

TEST(Energetics, GateEnergies) {
    const HardwareProfile p = default_profile();
    for (int m = 0; m <= 6; ++m) {
        const double angle = kPi / std::pow(2.0, m);
        const double want = 100e-3 * angle / (2 * kPi * 600e3);
        EXPECT_NEAR(gate_energy(NativeGate::LocalRz, angle, p, CompileMode::Calibrated), want, 1e-18);
        EXPECT_NEAR(gate_energy(NativeGate::LocalRz, angle, p, CompileMode::FirstPrinciples), want, 1e-18);
    }
    EXPECT_EQ(gate_energy(NativeGate::LocalRz, 0.0, p, CompileMode::Calibrated), 0.0);
    EXPECT_DOUBLE_EQ(gate_energy(NativeGate::Hadamard, 0.0, p, CompileMode::Calibrated), 4.98e-6);
    EXPECT_DOUBLE_EQ(gate_energy(NativeGate::CZ, 0.0, p, CompileMode::Calibrated), 47.3e-6);
    EXPECT_NEAR(gate_energy(NativeGate::GlobalXY, kPi, p, CompileMode::FirstPrinciples),
                57.4e-3 * kPi / (2 * kPi * 76.5e3), 1e-18);
    // First-principles CZ: two two-photon pulses on both lasers plus two corrections.
    const double tp = 2 * kPi / (std::sqrt(2.0) * 2 * kPi * 1.7e6);
    const double tc = 1.254 / (2 * kPi * 600e3);
    EXPECT_NEAR(gate_energy(NativeGate::CZ, 0.0, p, CompileMode::FirstPrinciples),
                2 * tp * (11.0 + 0.1) + 2 * tc * 0.1, 1e-15);
}

}  // namespace
}  // namespace rydberg
