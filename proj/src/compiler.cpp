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

#include "rydberg/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydberg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double pi = std::numbers::pi;

}  // namespace

std::string_view to_string(PulsePurpose purpose) {
    switch (purpose) {
        case PulsePurpose::GlobalXY: return "global_xy";
        case PulsePurpose::LocalRz: return "local_rz";
        case PulsePurpose::CzTwoPhoton: return "cz_two_photon";
        case PulsePurpose::CzCorrection: return "cz_correction";
        case PulsePurpose::Opaque: return "opaque";
        case PulsePurpose::CalibratedHadamard: return "calibrated_h";
        case PulsePurpose::CalibratedCz: return "calibrated_cz";
    }
    return "?";
}

std::string_view to_string(CompileMode mode) {
    return mode == CompileMode::Calibrated ? "calibrated" : "first_principles";
}

CompileMode compile_mode_from_string(std::string_view text) {
    if (text == "calibrated") {
        return CompileMode::Calibrated;
    }
    if (text == "first_principles" || text == "first-principles") {
        return CompileMode::FirstPrinciples;
    }
    throw std::invalid_argument("unknown compile mode '" + std::string(text) + "'");
}

double PulseStep::duration() const {
    double d = 0.0;
    for (const auto& p : pulses) {
        d = std::max(d, p.duration);
    }
    return d;
}

void PulseSchedule::add(Pulse pulse) { steps_.push_back(PulseStep{{std::move(pulse)}}); }

void PulseSchedule::add_group(std::vector<Pulse> pulses) {
    if (!pulses.empty()) {
        steps_.push_back(PulseStep{std::move(pulses)});
    }
}

void PulseSchedule::append(const PulseSchedule& other) {
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

std::size_t PulseSchedule::pulse_count() const {
    std::size_t n = 0;
    for (const auto& s : steps_) {
        n += s.pulses.size();
    }
    return n;
}

std::vector<Gate> decompose_local_rotation(Qubit q, double phi, double theta) {
    const double axis = phi + pi / 2.0;
    constexpr double alpha = pi / 2.0;
    return {GlobalRPhi{axis, alpha}, LocalRz{q, theta}, GlobalRPhi{axis, -alpha}};
}

std::vector<Gate> decompose_hadamard(Qubit q) {
    // H = Ry(pi/2) Z up to phase; Ry is the xy rotation at azimuth -pi/2.
    std::vector<Gate> out{LocalRz{q, pi}};
    for (auto& g : decompose_local_rotation(q, -pi / 2.0, pi / 2.0)) {
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Gate> decompose_crz(Qubit ctrl, Qubit tgt, double theta) {
    return {
        LocalRz{tgt, -theta / 2.0}, Hadamard{tgt}, CZ{ctrl, tgt}, Hadamard{tgt},
        LocalRz{tgt, -theta / 2.0}, Hadamard{tgt}, CZ{ctrl, tgt}, Hadamard{tgt},
        LocalRz{tgt, theta},
    };
}

std::vector<Gate> decompose_swap(Qubit a, Qubit b) {
    std::vector<Gate> out;
    auto cnot = [&out](Qubit c, Qubit t) {
        out.push_back(Hadamard{t});
        out.push_back(CZ{c, t});
        out.push_back(Hadamard{t});
    };
    cnot(a, b);
    cnot(b, a);
    cnot(a, b);
    return out;
}

Matrix cz_protocol_matrix(double phi01) {
    Matrix m = Matrix::Zero(4, 4);
    const std::complex<double> i{0.0, 1.0};
    m(0, 0) = 1.0;
    m(1, 1) = std::exp(i * phi01);
    m(2, 2) = std::exp(i * phi01);
    m(3, 3) = std::exp(i * (2.0 * phi01 - pi));
    return m;
}

namespace {

Pulse rz_pulse(Qubit q, double angle, PulsePurpose purpose, const HardwareProfile& profile) {
    return Pulse{std::string(source_ids::laser459), std::abs(angle) / profile.gates.omega_rz(), purpose, {q}, {}};
}

Pulse global_pulse(double theta, int n_qubits, const HardwareProfile& profile) {
    std::vector<Qubit> all(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        all[static_cast<std::size_t>(q)] = q;
    }
    return Pulse{std::string(source_ids::microwave), std::abs(theta) / profile.gates.omega_global(),
                 PulsePurpose::GlobalXY, std::move(all), {}};
}

class Lowerer {
public:
    Lowerer(const HardwareProfile& profile, CompileMode mode, int n_qubits)
        : profile_(profile), mode_(mode), n_(n_qubits) {
        for (auto id : {source_ids::microwave, source_ids::laser459, source_ids::laser1040}) {
            (void)profile.source(id);  // throws if missing
        }
    }

    void lower(const Gate& gate) {
        std::visit(overloaded{
                       [&](const Hadamard& g) {
                           if (mode_ == CompileMode::Calibrated) {
                               add(Pulse{std::string(kCalibratedSource), profile_.calibration.t_hadamard,
                                         PulsePurpose::CalibratedHadamard, {g.q}, profile_.calibration.e_hadamard});
                           } else {
                               lower_all(decompose_hadamard(g.q));
                           }
                       },
                       [&](const ControlledRz& g) { lower_all(decompose_crz(g.ctrl, g.tgt, g.angle)); },
                       [&](const CZ& g) {
                           if (mode_ == CompileMode::Calibrated) {
                               add(Pulse{std::string(kCalibratedSource), profile_.calibration.t_cz,
                                         PulsePurpose::CalibratedCz, {g.q1, g.q2}, profile_.calibration.e_cz});
                           } else {
                               schedule_.append(lower_cz(g.q1, g.q2, profile_));
                           }
                       },
                       [&](const LocalRz& g) { add(rz_pulse(g.q, g.angle, PulsePurpose::LocalRz, profile_)); },
                       [&](const LocalRPhi& g) { lower_all(decompose_local_rotation(g.q, g.phi, g.theta)); },
                       [&](const GlobalRPhi& g) { add(global_pulse(g.theta, n_, profile_)); },
                       [&](const Swap& g) { lower_all(decompose_swap(g.q1, g.q2)); },
                       [&](const OpaqueTimed& g) { lower_opaque(g); },
                   },
                   gate);
    }

    PulseSchedule take() { return std::move(schedule_); }

private:
    void lower_all(const std::vector<Gate>& gates) {
        for (const auto& g : gates) {
            lower(g);
        }
    }

    // Zero-length pulses (zero angles) are dropped.
    void add(Pulse p) {
        if (p.duration > 0.0) {
            schedule_.add(std::move(p));
        }
    }

    void lower_opaque(const OpaqueTimed& g) {
        const double reps = static_cast<double>(g.repetitions);
        std::vector<Pulse> lasers;
        for (const auto& [src, t] : g.durations) {
            (void)profile_.source(src);
            Pulse p{src, t * reps, PulsePurpose::Opaque, g.qubits, {}};
            if (p.duration <= 0.0) {
                continue;
            }
            if (src == source_ids::laser459 || src == source_ids::laser1040) {
                lasers.push_back(std::move(p));
            } else {
                schedule_.add(std::move(p));
            }
        }
        schedule_.add_group(std::move(lasers));
    }

    const HardwareProfile& profile_;
    CompileMode mode_;
    int n_;
    PulseSchedule schedule_;
};

}  // namespace

PulseSchedule lower_cz(Qubit q1, Qubit q2, const HardwareProfile& profile) {
    PulseSchedule s;
    // |11> couples to the W state at sqrt(2) Omega and must complete a full
    // 2 pi cycle in each pulse.
    const double t = 2.0 * pi / (std::sqrt(2.0) * profile.gates.omega_cz());
    for (int k = 0; k < 2; ++k) {
        s.add_group({
            Pulse{std::string(source_ids::laser459), t, PulsePurpose::CzTwoPhoton, {q1, q2}, {}},
            Pulse{std::string(source_ids::laser1040), t, PulsePurpose::CzTwoPhoton, {q1, q2}, {}},
        });
    }
    const double phi = profile.gates.cz_phase_phi01;
    if (phi != 0.0) {
        s.add(rz_pulse(q1, -phi, PulsePurpose::CzCorrection, profile));
        s.add(rz_pulse(q2, -phi, PulsePurpose::CzCorrection, profile));
    }
    return s;
}

Circuit lower_to_native(const Circuit& circuit) {
    Circuit out(circuit.n_qubits());
    auto emit = [&out](auto&& self, const Gate& gate) -> void {
        std::visit(overloaded{
                       [&](const Hadamard& g) {
                           for (const auto& x : decompose_hadamard(g.q)) self(self, x);
                       },
                       [&](const ControlledRz& g) {
                           for (const auto& x : decompose_crz(g.ctrl, g.tgt, g.angle)) self(self, x);
                       },
                       [&](const LocalRPhi& g) {
                           for (const auto& x : decompose_local_rotation(g.q, g.phi, g.theta)) self(self, x);
                       },
                       [&](const Swap& g) {
                           for (const auto& x : decompose_swap(g.q1, g.q2)) self(self, x);
                       },
                       [&](const auto&) { out.add(gate); },
                   },
                   gate);
    };
    for (const auto& g : circuit.gates()) {
        emit(emit, g);
    }
    return out;
}

PulseSchedule compile(const Circuit& circuit, const HardwareProfile& profile, CompileMode mode) {
    Lowerer lowerer(profile, mode, circuit.n_qubits());
    for (const auto& g : circuit.gates()) {
        lowerer.lower(g);
    }
    return lowerer.take();
}

double ScheduleDuration::total_on_time() const {
    double t = 0.0;
    for (const auto& [_, v] : on_time) {
        t += v;
    }
    return t;
}

ScheduleDuration schedule_duration(const PulseSchedule& schedule) {
    ScheduleDuration d;
    for (const auto& step : schedule.steps()) {
        for (const auto& p : step.pulses) {
            d.on_time[p.source_id] += p.duration;
        }
        d.wall_clock += step.duration();
    }
    return d;
}

}  // namespace rydberg
