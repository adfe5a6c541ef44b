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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rydberg/fit.hpp"
#include "rydberg/hwmodel.hpp"

namespace rydberg {

// ceil(sqrt(n)) for n >= 0.
int grid_side(std::int64_t n);

// Square grid of side ceil(sqrt(n)), filled row-major from cell 0.
struct GridLayout {
    int n_atoms = 0;
    int side = 0;
    double spacing = 0.0;           // m
    std::vector<int> occupancy;     // atom -> cell

    static GridLayout filled(int n_atoms, double spacing);
};

// Mean Euclidean distance, in cells, between two uniformly drawn cells of a
// side x side grid (ordered pairs, self-pairs included).
double mean_pair_distance_for_side(int side);

// D(n): mean_pair_distance_for_side(ceil(sqrt(n))).
double mean_pair_distance(std::int64_t n);

struct HopCost {
    double time = 0.0;    // s
    double energy = 0.0;  // J
};

// Moving one atom by one cell: (spacing + beam width) at the speed limit.
HopCost single_hop_cost(const HardwareProfile& profile);

// slope * n(n-1) * D(n) * E_1
double transport_energy_analytic(std::int64_t n, const HardwareProfile& profile);
// slope * n(n-1) * D(n) * t_1
double transport_time_analytic(std::int64_t n, const HardwareProfile& profile);

enum class TransportPolicy { MoveAdjacentAndReturn, MoveAdjacentStay };

std::string_view to_string(TransportPolicy policy);
TransportPolicy transport_policy_from_string(std::string_view text);

struct TransportSimConfig {
    int n_atoms = 25;
    std::int64_t gates = 10000;
    TransportPolicy policy = TransportPolicy::MoveAdjacentAndReturn;
    double blockade_radius = 1.0;  // cells, Chebyshev metric (diagonals included)
    std::uint64_t seed = 20250101;
};

struct TransportSample {
    std::int64_t gate_index = 0;  // 1-based
    std::int64_t transports = 0;  // cumulative
    std::int64_t hops = 0;        // cumulative Manhattan cells
    double distance = 0.0;        // cumulative Euclidean cells
};

struct TransportSimResult {
    std::vector<TransportSample> trace;
    std::int64_t transports = 0;
    std::int64_t hops = 0;
    double distance = 0.0;
    LinearFit fit;  // cumulative transports vs gate index
};

// Random two-qubit gates on a filled grid. A gate whose pair lies outside
// the blockade radius moves the second atom to the nearest cell inside the
// radius of the first. With MoveAdjacentAndReturn the atom returns home
// afterwards (one transport, hops counted both ways); with MoveAdjacentStay
// it keeps the new cell and any occupant is exchanged into the vacated one
// (one transport per atom moved).
TransportSimResult simulate_transports(const TransportSimConfig& config);

// gate_index,cumulative_transports,cumulative_hops
std::string transport_trace_csv(const TransportSimResult& result);
nlohmann::json transport_summary_json(const TransportSimResult& result, const TransportSimConfig& config,
                                      double analytic_slope);

}  // namespace rydberg
