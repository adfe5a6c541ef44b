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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rydberg/layout.hpp"
#include "rydberg/scaling.hpp"

namespace rydberg {
namespace {

using oracle::kPi;

constexpr double kEH = 4.98e-6;
constexpr double kECZ = 47.3e-6;
constexpr double kTH = 25.7693e-6;
constexpr double kTCZ = 12.2836e-6;
const double kOmegaZ = 2 * kPi * 600e3;
const double kRzPi = 0.1 * kPi / kOmegaZ;

double hand_sum(std::int64_t n) {
    double s = 0;
    for (std::int64_t m = 1; m <= n; ++m) {
        s += double(n - m) * std::pow(2.0, 1.0 - double(m));
    }
    return s;
}

TEST(Scaling, RotationSums) {
    EXPECT_EQ(rotation_weight_sum(1), 0.0);
    EXPECT_EQ(rotation_weight_sum(2), 1.0);
    EXPECT_EQ(rotation_weight_printed_closed_form(2), 5.0);
    EXPECT_EQ(rotation_weight_derived_closed_form(2), 1.0);
    for (std::int64_t n = 1; n <= 60; ++n) {
        const double d = rotation_weight_sum(n);
        EXPECT_NEAR(d, hand_sum(n), 1e-12 * std::max(1.0, d));
        EXPECT_NEAR(rotation_weight_derived_closed_form(n), d, 1e-12 * std::max(1.0, d)) << n;
        EXPECT_GT(std::abs(rotation_weight_printed_closed_form(n) - d), 1.0) << n;
    }
    EXPECT_NEAR(rotation_weight_sum(100000), 2.0 * 100000 - 4, 1e-6);
}

TEST(Scaling, ClosedFormCheckReport) {
    const auto rows = closed_form_check(60);
    ASSERT_EQ(rows.size(), 60u);
    for (const auto& r : rows) {
        EXPECT_LE(r.derived_relative_error, 1e-12);
        EXPECT_GT(r.printed_relative_error, 0.9);
    }
}

TEST(Scaling, GateConstants) {
    const HardwareProfile p = default_profile();
    const GateConstants c = gate_constants(p, CompileMode::Calibrated);
    EXPECT_DOUBLE_EQ(c.e_hadamard, kEH);
    EXPECT_DOUBLE_EQ(c.e_cz, kECZ);
    EXPECT_DOUBLE_EQ(c.t_hadamard, kTH);
    EXPECT_DOUBLE_EQ(c.t_cz, kTCZ);
    const GateConstants f = gate_constants(p, CompileMode::FirstPrinciples);
    EXPECT_GT(f.e_hadamard, 0.0);
    EXPECT_GT(f.e_cz, 0.0);
    EXPECT_NEAR(rz_pi_energy(p), kRzPi, 1e-20);
    EXPECT_NEAR(rz_pi_time(p), kPi / kOmegaZ, 1e-20);
}

TEST(Scaling, CrzEnergy) {
    const HardwareProfile p = default_profile();
    EXPECT_NEAR(crz_energy(1, p), 4 * kEH + 2 * kECZ + kRzPi, 1e-18);
    for (int m = 1; m < 30; ++m) {
        const double want = 4 * kEH + 2 * kECZ + kRzPi * std::pow(2.0, 1.0 - m);
        EXPECT_NEAR(crz_energy(m, p), want, 1e-15 * want) << m;
    }
    EXPECT_NEAR(crz_energy(1000, p), 4 * kEH + 2 * kECZ, 1e-18);
    EXPECT_THROW(crz_energy(0, p), std::invalid_argument);
}

TEST(Scaling, QftGateEnergy) {
    const HardwareProfile p = default_profile();
    EXPECT_DOUBLE_EQ(qft_gate_energy(1, p), kEH);
    const double two = qft_gate_energy(2, p);
    EXPECT_NEAR(two, 6 * kEH + 2 * kECZ + kRzPi, 1e-18);
    EXPECT_NEAR(two / 1e-6, 124.6, 0.05);
    for (std::int64_t n = 1; n <= 60; ++n) {
        const double direct = qft_gate_energy(n, p, QftEnergyMethod::DirectSum);
        const double derived = qft_gate_energy(n, p, QftEnergyMethod::DerivedClosedForm);
        EXPECT_NEAR(direct, derived, 1e-12 * direct);
        const double printed = qft_gate_energy(n, p, QftEnergyMethod::PrintedClosedForm);
        const double want = (n + 2.0 * n * (n - 1)) * kEH + n * (n - 1.0) * kECZ +
                            4 * kRzPi * (n - 1 + std::pow(2.0, -double(n)));
        EXPECT_NEAR(printed, want, 1e-12 * want);
    }
}

TEST(Scaling, QftEnergyMatchesCompiledLedger) {
    const HardwareProfile p = default_profile();
    for (int n = 1; n <= 8; ++n) {
        const PulseSchedule s = compile(build_qft(n), p, CompileMode::Calibrated);
        const auto d = schedule_duration(s);
        double energy = 0;
        for (const auto& step : s.steps()) {
            for (const auto& pulse : step.pulses) {
                energy += pulse.fixed_energy ? *pulse.fixed_energy : p.billing_power(pulse.source_id) * pulse.duration;
            }
        }
        EXPECT_NEAR(qft_gate_energy(n, p), energy, 1e-12 * energy) << n;
        EXPECT_NEAR(qft_time(n, p), d.wall_clock, 1e-12 * d.wall_clock) << n;
    }
}

TEST(Scaling, QftTime) {
    const HardwareProfile p = default_profile();
    EXPECT_DOUBLE_EQ(qft_time(1, p), kTH);
    const double t39 = qft_time(39, p);
    EXPECT_GT(t39, 95e-3);
    EXPECT_LT(t39, 96e-3);
    double last = 0;
    for (std::int64_t n = 1; n <= 200; ++n) {
        const double t = qft_time(n, p);
        EXPECT_GT(t, last);
        last = t;
    }
}

TEST(Scaling, TrapsEnergy) {
    HardwareProfile p = default_profile();
    EXPECT_NEAR(traps_energy(49, p), 49 * 10e-3 * (qft_time(49, p) + 0.2), 1e-15);
    EXPECT_NEAR(traps_energy(50, p), 64 * 10e-3 * (qft_time(50, p) + 0.2), 1e-15);
    EXPECT_NEAR(traps_energy(1, p), 10e-3 * (kTH + 0.2), 1e-18);
    p.transport.transport_extends_trap_time = true;
    EXPECT_NEAR(traps_energy(49, p), 49 * 10e-3 * (qft_time(49, p) + 0.2 + transport_time_analytic(49, p)), 1e-15);
}

TEST(Scaling, Breakdown) {
    const HardwareProfile p = default_profile();
    const double e_const = 1e-3 * 0.1 + 1e-3 * 0.01 + 4 * 220e-6 * 0.09;
    EXPECT_NEAR(constant_energy(p), e_const, 1e-18);
    const EnergyBreakdown b = total_quantum_energy(4, p);
    EXPECT_GT(b.e_gates, 0);
    EXPECT_GT(b.e_transport, 0);
    EXPECT_GT(b.e_traps, 0);
    EXPECT_GT(b.e_const, 0);
    EXPECT_TRUE(std::isfinite(b.e_total));
    for (std::int64_t n : {1, 2, 7, 100, 12345}) {
        const EnergyBreakdown r = total_quantum_energy(n, p);
        EXPECT_EQ(r.e_total, r.e_gates + r.e_transport + r.e_traps + r.e_const);
        EXPECT_EQ(r.e_transport, transport_energy_analytic(n, p));
    }
}

TEST(Scaling, ComponentsMonotone) {
    const HardwareProfile p = default_profile();
    EnergyBreakdown last = total_quantum_energy(2, p);
    for (std::int64_t n = 3; n <= 400; ++n) {
        const EnergyBreakdown r = total_quantum_energy(n, p);
        EXPECT_GE(r.e_gates, last.e_gates);
        EXPECT_GE(r.e_transport, last.e_transport);
        EXPECT_GE(r.e_traps, last.e_traps);
        EXPECT_GE(r.e_total, last.e_total);
        EXPECT_EQ(r.e_const, last.e_const);
        last = r;
    }
}

TEST(Scaling, Ranges) {
    EXPECT_EQ(linear_range(1, 5, 2), (std::vector<std::int64_t>{1, 3, 5}));
    EXPECT_EQ(linear_range(4, 4, 1), (std::vector<std::int64_t>{4}));
    EXPECT_TRUE(linear_range(5, 4, 1).empty());
    EXPECT_THROW(linear_range(1, 5, 0), std::invalid_argument);
    const auto lr = log_range(1000, 100000, 30);
    EXPECT_EQ(lr.front(), 1000);
    EXPECT_EQ(lr.back(), 100000);
    for (std::size_t i = 1; i < lr.size(); ++i) {
        EXPECT_GT(lr[i], lr[i - 1]);
    }
    EXPECT_LE(lr.size(), 30u);
}

TEST(Scaling, FitExponentSynthetic) {
    std::vector<double> n;
    std::vector<double> e;
    for (int k = 1; k <= 20; ++k) {
        n.push_back(10.0 * k);
        e.push_back(7.5 * std::pow(10.0 * k, 3.0));
    }
    EXPECT_NEAR(fit_exponent(n, e), 3.0, 1e-6);
    e[3] = 0.0;
    EXPECT_THROW(fit_exponent(n, e), std::domain_error);
    e[3] = -1.0;
    EXPECT_THROW(fit_exponent(n, e), std::domain_error);
    n.resize(9);
    e.resize(9);
    EXPECT_THROW(fit_exponent(n, e), std::invalid_argument);
}

TEST(Scaling, AsymptoticExponents) {
    const HardwareProfile p = default_profile();
    const auto ns = log_range(1000, 100000, 40);
    const ScalingCurve c = scaling_curve(ns, p);
    EXPECT_NEAR(fit_exponent(c, Component::Gates, 1000, 100000), 2.0, 0.1);
    EXPECT_NEAR(fit_exponent(c, Component::Transport, 1000, 100000), 2.5, 0.1);
    EXPECT_NEAR(fit_exponent(c, Component::Traps, 1000, 100000), 3.0, 0.1);
    EXPECT_NEAR(fit_exponent(c, Component::Total, 1000, 100000), 3.0, 0.1);
    EXPECT_THROW(fit_exponent(c, Component::Total, 1000, 1100), std::invalid_argument);
}

TEST(Scaling, OrderingOnset) {
    const HardwareProfile p = default_profile();
    const auto onset = ordering_onset(p, 100000);
    ASSERT_TRUE(onset.has_value());
    for (std::int64_t n : {*onset, *onset + 1, (*onset + 100000) / 2, std::int64_t(100000)}) {
        const auto r = total_quantum_energy(n, p);
        EXPECT_GT(r.e_traps, r.e_transport) << n;
        EXPECT_GT(r.e_transport, r.e_gates) << n;
    }
    if (*onset > 1) {
        const auto r = total_quantum_energy(*onset - 1, p);
        EXPECT_FALSE(r.e_traps > r.e_transport && r.e_transport > r.e_gates);
    }
    EXPECT_FALSE(ordering_onset(p, 100).has_value());
}

TEST(Scaling, CurveSerialization) {
    const HardwareProfile p = default_profile();
    const std::vector<std::int64_t> ns = {1, 2, 3, 10, 77, 1000};
    ScalingCurve c = scaling_curve(ns, p);
    EXPECT_EQ(curve_from_csv(curve_to_csv(c)), c);
    EXPECT_EQ(curve_from_json(curve_to_json(c)), c);
    EXPECT_EQ(curve_from_json(nlohmann::json::parse(curve_to_json(c).dump())), c);
    c.classical_columns = {"jedi"};
    for (auto& row : c.rows) {
        row.classical["jedi"] = 1e-14 * double(row.energy.n) * std::ldexp(1.0, int(row.energy.n % 50));
    }
    EXPECT_EQ(curve_from_csv(curve_to_csv(c)), c);
    EXPECT_EQ(curve_from_json(curve_to_json(c)), c);
    EXPECT_EQ(curve_to_csv(c).rfind("n,E_gates_J,E_transport_J,E_traps_J,E_const_J,E_total_J,t_qft_s,"
                                    "E_classical_jedi_J\n",
                                    0),
              0u);
    EXPECT_THROW(curve_from_csv("n,foo\n"), std::invalid_argument);
}

TEST(Scaling, CurveRowsIncreasing) {
    const std::vector<std::int64_t> bad = {3, 2};
    EXPECT_THROW(scaling_curve(bad, default_profile()), std::invalid_argument);
    const std::vector<std::int64_t> zero = {0};
    EXPECT_THROW(scaling_curve(zero, default_profile()), std::invalid_argument);
}

TEST(Scaling, Deterministic) {
    const auto ns = linear_range(1, 300, 7);
    EXPECT_EQ(curve_to_csv(scaling_curve(ns, default_profile())), curve_to_csv(scaling_curve(ns, default_profile())));
}

}  // namespace
}  // namespace rydberg
