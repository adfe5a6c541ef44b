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

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace rydberg {

// Qubit 0 is the most significant bit and the top wire of a circuit diagram.
using Qubit = int;

struct Hadamard {
    Qubit q = 0;
    bool operator==(const Hadamard&) const = default;
};

// diag(1, 1, e^{-i angle/2}, e^{i angle/2}) with the control as the high bit.
struct ControlledRz {
    Qubit ctrl = 0;
    Qubit tgt = 0;
    double angle = 0.0;
    bool operator==(const ControlledRz&) const = default;
};

struct CZ {
    Qubit q1 = 0;
    Qubit q2 = 0;
    bool operator==(const CZ&) const = default;
};

struct LocalRz {
    Qubit q = 0;
    double angle = 0.0;
    bool operator==(const LocalRz&) const = default;
};

// Rotation by `theta` about the xy-plane axis at azimuth `phi`, on one qubit.
struct LocalRPhi {
    Qubit q = 0;
    double phi = 0.0;
    double theta = 0.0;
    bool operator==(const LocalRPhi&) const = default;
};

// Same rotation applied to every qubit of the register at once.
struct GlobalRPhi {
    double phi = 0.0;
    double theta = 0.0;
    bool operator==(const GlobalRPhi&) const = default;
};

struct Swap {
    Qubit q1 = 0;
    Qubit q2 = 0;
    bool operator==(const Swap&) const = default;
};

// Externally measured block with fixed per-source on-times (seconds),
// executed `repetitions` times back to back.
struct OpaqueTimed {
    std::string label;
    std::map<std::string, double> durations;
    std::vector<Qubit> qubits;
    int repetitions = 1;
    bool operator==(const OpaqueTimed&) const = default;
};

using Gate = std::variant<Hadamard, ControlledRz, CZ, LocalRz, LocalRPhi, GlobalRPhi, Swap, OpaqueTimed>;

enum class GateKind { Hadamard, ControlledRz, CZ, LocalRz, LocalRPhi, GlobalRPhi, Swap, OpaqueTimed };

GateKind kind_of(const Gate& gate);
std::string_view kind_name(GateKind kind);
std::vector<Qubit> qubits_of(const Gate& gate);

class Circuit {
public:
    explicit Circuit(int n_qubits);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    /// Appends a gate after checking its qubit indices and angles.
    Circuit& add(Gate gate);
    Circuit& append(const Circuit& other);

    bool operator==(const Circuit&) const = default;

private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

struct QftOptions {
    bool include_final_swaps = false;
    // Adds Rz(angle/2) on the control after each controlled rotation so the
    // rotation becomes the textbook controlled phase.
    bool exact_phase_correction = false;
};

Circuit build_qft(int n, QftOptions options = {});
Circuit build_inverse_qft(int n, QftOptions options = {});

// Gate sequence of `c` reversed, each gate replaced by its inverse.
Circuit inverse(const Circuit& c);

// Measurement register on qubits [0, t), phase register on [t, t + phase_register).
Circuit build_qpe(int t, int phase_register, const std::optional<OpaqueTimed>& controlled_u,
                  QftOptions inverse_qft_options = {});

std::map<std::string, int> gate_count_summary(const Circuit& c);

// ---- unitary oracle ------------------------------------------------------

using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxOracleQubits = 4;

Matrix rphi_matrix(double phi, double theta);
Matrix rz_matrix(double theta);
Matrix hadamard_matrix();
Matrix cz_matrix();
Matrix crz_matrix(double theta);

// Product of gate matrices in circuit order. Throws std::length_error above
// kMaxOracleQubits and std::invalid_argument for OpaqueTimed gates.
Matrix circuit_unitary(const Circuit& c);

// Frobenius distance after removing the best global phase.
double phase_insensitive_distance(const Matrix& a, const Matrix& b);

// ---- text format ----------------------------------------------------------

class CircuitParseError : public std::runtime_error {
public:
    CircuitParseError(int line, const std::string& msg);
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

std::string to_text(const Circuit& c);
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string& path);

}  // namespace rydberg
