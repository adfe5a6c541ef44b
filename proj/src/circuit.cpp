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

#include "rydberg/circuit.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace rydberg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

}  // namespace

GateKind kind_of(const Gate& gate) { return static_cast<GateKind>(gate.index()); }

std::string_view kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Hadamard: return "H";
        case GateKind::ControlledRz: return "ControlledRz";
        case GateKind::CZ: return "CZ";
        case GateKind::LocalRz: return "Rz";
        case GateKind::LocalRPhi: return "LocalRPhi";
        case GateKind::GlobalRPhi: return "GlobalRPhi";
        case GateKind::Swap: return "Swap";
        case GateKind::OpaqueTimed: return "OpaqueTimed";
    }
    return "?";
}

std::vector<Qubit> qubits_of(const Gate& gate) {
    return std::visit(overloaded{
                          [](const Hadamard& g) { return std::vector<Qubit>{g.q}; },
                          [](const ControlledRz& g) { return std::vector<Qubit>{g.ctrl, g.tgt}; },
                          [](const CZ& g) { return std::vector<Qubit>{g.q1, g.q2}; },
                          [](const LocalRz& g) { return std::vector<Qubit>{g.q}; },
                          [](const LocalRPhi& g) { return std::vector<Qubit>{g.q}; },
                          [](const GlobalRPhi&) { return std::vector<Qubit>{}; },
                          [](const Swap& g) { return std::vector<Qubit>{g.q1, g.q2}; },
                          [](const OpaqueTimed& g) { return g.qubits; },
                      },
                      gate);
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

Circuit& Circuit::add(Gate gate) {
    const auto qs = qubits_of(gate);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] < 0 || qs[i] >= n_qubits_) {
            throw std::invalid_argument(fmt::format("qubit {} out of range for {}-qubit circuit", qs[i], n_qubits_));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qs[i] == qs[j]) {
                throw std::invalid_argument(fmt::format("qubit {} repeated within one gate", qs[i]));
            }
        }
    }
    const bool finite = std::visit(overloaded{
                                       [](const ControlledRz& g) { return std::isfinite(g.angle); },
                                       [](const LocalRz& g) { return std::isfinite(g.angle); },
                                       [](const LocalRPhi& g) { return std::isfinite(g.phi) && std::isfinite(g.theta); },
                                       [](const GlobalRPhi& g) { return std::isfinite(g.phi) && std::isfinite(g.theta); },
                                       [](const OpaqueTimed& g) {
                                           if (g.repetitions < 0) {
                                               return false;
                                           }
                                           for (const auto& [_, t] : g.durations) {
                                               if (!std::isfinite(t) || t < 0.0) {
                                                   return false;
                                               }
                                           }
                                           return true;
                                       },
                                       [](const auto&) { return true; },
                                   },
                                   gate);
    if (!finite) {
        throw std::invalid_argument(fmt::format("{} gate has a non-finite angle or invalid duration",
                                                kind_name(kind_of(gate))));
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    for (const auto& g : other.gates()) {
        add(g);
    }
    return *this;
}

Circuit build_qft(int n, QftOptions options) {
    if (n < 1) {
        throw std::invalid_argument("QFT needs n >= 1");
    }
    Circuit c(n);
    for (int i = 0; i < n; ++i) {
        c.add(Hadamard{i});
        for (int j = i + 1; j < n; ++j) {
            const double angle = std::numbers::pi / std::ldexp(1.0, j - i);
            c.add(ControlledRz{j, i, angle});
            if (options.exact_phase_correction) {
                c.add(LocalRz{j, angle / 2.0});
            }
        }
    }
    if (options.include_final_swaps) {
        for (int i = 0; i < n / 2; ++i) {
            c.add(Swap{i, n - 1 - i});
        }
    }
    return c;
}

Circuit inverse(const Circuit& c) {
    Circuit out(c.n_qubits());
    const auto& gates = c.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.add(std::visit(overloaded{
                               [](ControlledRz g) -> Gate { g.angle = -g.angle; return g; },
                               [](LocalRz g) -> Gate { g.angle = -g.angle; return g; },
                               [](LocalRPhi g) -> Gate { g.theta = -g.theta; return g; },
                               [](GlobalRPhi g) -> Gate { g.theta = -g.theta; return g; },
                               [](const OpaqueTimed& g) -> Gate {
                                   throw std::invalid_argument("cannot invert opaque block '" + g.label + "'");
                               },
                               [](const auto& g) -> Gate { return g; },
                           },
                           *it));
    }
    return out;
}

Circuit build_inverse_qft(int n, QftOptions options) { return inverse(build_qft(n, options)); }

Circuit build_qpe(int t, int phase_register, const std::optional<OpaqueTimed>& controlled_u,
                  QftOptions inverse_qft_options) {
    if (t < 1 || phase_register < 1) {
        throw std::invalid_argument("QPE needs at least one measurement and one phase qubit");
    }
    if (!controlled_u) {
        throw std::invalid_argument("QPE needs a controlled-U template");
    }
    Circuit c(t + phase_register);
    for (int q = 0; q < t; ++q) {
        c.add(Hadamard{q});
    }
    // The least significant measurement qubit controls U^(2^0).
    for (int j = 0; j < t; ++j) {
        OpaqueTimed block = *controlled_u;
        block.repetitions = controlled_u->repetitions << j;
        block.label = controlled_u->label + "^" + std::to_string(1 << j);
        block.qubits = {t - 1 - j};
        for (int p = 0; p < phase_register; ++p) {
            block.qubits.push_back(t + p);
        }
        c.add(std::move(block));
    }
    const Circuit iqft = build_inverse_qft(t, inverse_qft_options);
    for (const auto& g : iqft.gates()) {
        c.add(g);
    }
    return c;
}

std::map<std::string, int> gate_count_summary(const Circuit& c) {
    std::map<std::string, int> counts;
    for (int k = 0; k <= static_cast<int>(GateKind::OpaqueTimed); ++k) {
        counts[std::string(kind_name(static_cast<GateKind>(k)))] = 0;
    }
    for (const auto& g : c.gates()) {
        ++counts[std::string(kind_name(kind_of(g)))];
    }
    return counts;
}

// ---- unitary oracle ------------------------------------------------------

Matrix rphi_matrix(double phi, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Matrix m(2, 2);
    m << c, -I * std::exp(I * phi) * s,
         -I * std::exp(-I * phi) * s, c;
    return m;
}

Matrix rz_matrix(double theta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-I * theta / 2.0);
    m(1, 1) = std::exp(I * theta / 2.0);
    return m;
}

Matrix hadamard_matrix() {
    Matrix m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

Matrix cz_matrix() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return m;
}

Matrix crz_matrix(double theta) {
    Matrix m = Matrix::Identity(4, 4);
    m(2, 2) = std::exp(-I * theta / 2.0);
    m(3, 3) = std::exp(I * theta / 2.0);
    return m;
}

namespace {

class UnitaryBuilder {
public:
    explicit UnitaryBuilder(int n) : n_(n), u_(Matrix::Identity(1 << n, 1 << n)) {}

    // Left-multiplies by `m` acting on qubit q.
    void one(const Matrix& m, Qubit q) {
        const int mask = bit(q);
        for (int i = 0; i < dim(); ++i) {
            if (i & mask) {
                continue;
            }
            const int j = i | mask;
            for (int col = 0; col < dim(); ++col) {
                const cd a = u_(i, col);
                const cd b = u_(j, col);
                u_(i, col) = m(0, 0) * a + m(0, 1) * b;
                u_(j, col) = m(1, 0) * a + m(1, 1) * b;
            }
        }
    }

    // Left-multiplies by a 4x4 matrix on (hi, lo), hi being the high bit of m's index.
    void two(const Matrix& m, Qubit hi, Qubit lo) {
        const int mh = bit(hi);
        const int ml = bit(lo);
        for (int i = 0; i < dim(); ++i) {
            if ((i & mh) || (i & ml)) {
                continue;
            }
            const int idx[4] = {i, i | ml, i | mh, i | mh | ml};
            for (int col = 0; col < dim(); ++col) {
                cd v[4];
                for (int r = 0; r < 4; ++r) {
                    v[r] = u_(idx[r], col);
                }
                for (int r = 0; r < 4; ++r) {
                    cd acc = 0.0;
                    for (int k = 0; k < 4; ++k) {
                        acc += m(r, k) * v[k];
                    }
                    u_(idx[r], col) = acc;
                }
            }
        }
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const Matrix& result() const { return u_; }

private:
    [[nodiscard]] int bit(Qubit q) const { return 1 << (n_ - 1 - q); }
    [[nodiscard]] int dim() const { return 1 << n_; }

    int n_;
    Matrix u_;
};

Matrix swap_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
}

}  // namespace

Matrix circuit_unitary(const Circuit& c) {
    if (c.n_qubits() > kMaxOracleQubits) {
        throw std::length_error(
            fmt::format("unitary oracle supports at most {} qubits, got {}", kMaxOracleQubits, c.n_qubits()));
    }
    UnitaryBuilder b(c.n_qubits());
    for (const auto& gate : c.gates()) {
        std::visit(overloaded{
                       [&](const Hadamard& g) { b.one(hadamard_matrix(), g.q); },
                       [&](const ControlledRz& g) { b.two(crz_matrix(g.angle), g.ctrl, g.tgt); },
                       [&](const CZ& g) { b.two(cz_matrix(), g.q1, g.q2); },
                       [&](const LocalRz& g) { b.one(rz_matrix(g.angle), g.q); },
                       [&](const LocalRPhi& g) { b.one(rphi_matrix(g.phi, g.theta), g.q); },
                       [&](const GlobalRPhi& g) {
                           const Matrix m = rphi_matrix(g.phi, g.theta);
                           for (int q = 0; q < b.n(); ++q) {
                               b.one(m, q);
                           }
                       },
                       [&](const Swap& g) { b.two(swap_matrix(), g.q1, g.q2); },
                       [&](const OpaqueTimed& g) {
                           throw std::invalid_argument("unitary oracle does not support opaque block '" + g.label +
                                                       "'");
                       },
                   },
                   gate);
    }
    return b.result();
}

double phase_insensitive_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shapes differ");
    }
    const cd overlap = (b.adjoint() * a).trace();
    const cd phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cd{1.0, 0.0};
    return (a - phase * b).norm();
}

// ---- text format ----------------------------------------------------------

CircuitParseError::CircuitParseError(int line, const std::string& msg)
    : std::runtime_error(fmt::format("line {}: {}", line, msg)), line_(line) {}

std::string to_text(const Circuit& c) {
    std::string out = fmt::format("qubits {}\n", c.n_qubits());
    for (const auto& gate : c.gates()) {
        out += std::visit(
            overloaded{
                [](const Hadamard& g) { return fmt::format("h {}", g.q); },
                [](const ControlledRz& g) { return fmt::format("crz {} {} {}", g.ctrl, g.tgt, g.angle); },
                [](const CZ& g) { return fmt::format("cz {} {}", g.q1, g.q2); },
                [](const LocalRz& g) { return fmt::format("rz {} {}", g.q, g.angle); },
                [](const LocalRPhi& g) { return fmt::format("rphi {} {} {}", g.q, g.phi, g.theta); },
                [](const GlobalRPhi& g) { return fmt::format("grphi {} {}", g.phi, g.theta); },
                [](const Swap& g) { return fmt::format("swap {} {}", g.q1, g.q2); },
                [](const OpaqueTimed& g) {
                    std::string line = fmt::format("opaque {} reps={} qubits=", g.label, g.repetitions);
                    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
                        line += fmt::format("{}{}", i ? "," : "", g.qubits[i]);
                    }
                    for (const auto& [src, t] : g.durations) {
                        line += fmt::format(" {}={}", src, t);
                    }
                    return line;
                },
            },
            gate);
        out += '\n';
    }
    return out;
}

namespace {

class LineReader {
public:
    LineReader(std::string line, int number) : in_(std::move(line)), number_(number) {}

    std::string word(const char* what) {
        std::string w;
        if (!(in_ >> w)) {
            throw CircuitParseError(number_, std::string("expected ") + what);
        }
        return w;
    }

    int integer(const char* what) {
        const std::string w = word(what);
        return to_int(w, what);
    }

    double real(const char* what) {
        const std::string w = word(what);
        return to_double(w, what);
    }

    int to_int(const std::string& w, const char* what) const {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || w.empty()) {
            throw CircuitParseError(number_, fmt::format("expected integer {} but got '{}'", what, w));
        }
        return v;
    }

    double to_double(const std::string& w, const char* what) const {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || w.empty()) {
            throw CircuitParseError(number_, fmt::format("expected number {} but got '{}'", what, w));
        }
        return v;
    }

    bool done() {
        std::string rest;
        return !(in_ >> rest);
    }

    bool next(std::string& w) { return static_cast<bool>(in_ >> w); }

    [[nodiscard]] int number() const { return number_; }

private:
    std::istringstream in_;
    int number_;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        if (raw.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        LineReader r(raw, line_no);
        const std::string op = r.word("gate keyword");
        if (!circuit) {
            if (op != "qubits") {
                throw CircuitParseError(line_no, "first statement must be 'qubits <n>'");
            }
            const int n = r.integer("qubit count");
            if (n < 1) {
                throw CircuitParseError(line_no, "qubit count must be >= 1");
            }
            circuit.emplace(n);
            if (!r.done()) {
                throw CircuitParseError(line_no, "trailing tokens");
            }
            continue;
        }

        Gate gate;
        if (op == "h") {
            gate = Hadamard{r.integer("qubit")};
        } else if (op == "crz") {
            const int ctrl = r.integer("control");
            const int tgt = r.integer("target");
            gate = ControlledRz{ctrl, tgt, r.real("angle")};
        } else if (op == "cz") {
            const int a = r.integer("qubit");
            gate = CZ{a, r.integer("qubit")};
        } else if (op == "rz") {
            const int q = r.integer("qubit");
            gate = LocalRz{q, r.real("angle")};
        } else if (op == "rphi") {
            const int q = r.integer("qubit");
            const double phi = r.real("axis angle");
            gate = LocalRPhi{q, phi, r.real("rotation angle")};
        } else if (op == "grphi") {
            const double phi = r.real("axis angle");
            gate = GlobalRPhi{phi, r.real("rotation angle")};
        } else if (op == "swap") {
            const int a = r.integer("qubit");
            gate = Swap{a, r.integer("qubit")};
        } else if (op == "opaque") {
            OpaqueTimed block;
            block.label = r.word("label");
            std::string field;
            while (r.next(field)) {
                const auto eq = field.find('=');
                if (eq == std::string::npos || eq == 0) {
                    throw CircuitParseError(line_no, "expected key=value, got '" + field + "'");
                }
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                if (key == "reps") {
                    block.repetitions = r.to_int(value, "repetition count");
                } else if (key == "qubits") {
                    std::istringstream list(value);
                    std::string item;
                    while (std::getline(list, item, ',')) {
                        block.qubits.push_back(r.to_int(item, "qubit"));
                    }
                } else {
                    block.durations[key] = r.to_double(value, "duration");
                }
            }
            gate = std::move(block);
        } else {
            throw CircuitParseError(line_no, "unknown gate '" + op + "'");
        }
        if (op != "opaque" && !r.done()) {
            throw CircuitParseError(line_no, "trailing tokens");
        }
        try {
            circuit->add(std::move(gate));
        } catch (const std::invalid_argument& e) {
            throw CircuitParseError(line_no, e.what());
        }
    }
    if (!circuit) {
        throw CircuitParseError(line_no, "missing 'qubits <n>' header");
    }
    return *std::move(circuit);
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CircuitParseError(0, "cannot open circuit file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

}  // namespace rydberg
