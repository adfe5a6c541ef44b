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

#include "rydberg/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace rydberg {

int grid_side(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("grid size must be non-negative");
    }
    auto side = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (side * side < n) {
        ++side;
    }
    while (side > 0 && (side - 1) * (side - 1) >= n) {
        --side;
    }
    return static_cast<int>(side);
}

GridLayout GridLayout::filled(int n_atoms, double spacing) {
    if (n_atoms < 1) {
        throw std::invalid_argument("grid needs at least one atom");
    }
    GridLayout g;
    g.n_atoms = n_atoms;
    g.side = grid_side(n_atoms);
    g.spacing = spacing;
    g.occupancy.resize(static_cast<std::size_t>(n_atoms));
    for (int a = 0; a < n_atoms; ++a) {
        g.occupancy[static_cast<std::size_t>(a)] = a;
    }
    return g;
}

double mean_pair_distance_for_side(int side) {
    if (side < 1) {
        return 0.0;
    }
    // Each displacement (dx, dy) occurs w(dx) * w(dy) times among ordered
    // pairs, with w(0) = side and w(d) = 2 (side - d) for d > 0.
    const auto weight = [side](int d) { return d == 0 ? double(side) : 2.0 * double(side - d); };
    double sum = 0.0;
    for (int dx = 0; dx < side; ++dx) {
        const double wx = weight(dx);
        double row = 0.0;
        for (int dy = 0; dy < side; ++dy) {
            row += weight(dy) * std::sqrt(double(dx) * dx + double(dy) * dy);
        }
        sum += wx * row;
    }
    const double s2 = double(side) * side;
    return sum / (s2 * s2);
}

double mean_pair_distance(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("D(n) needs n >= 1");
    }
    return mean_pair_distance_for_side(grid_side(n));
}

HopCost single_hop_cost(const HardwareProfile& profile) {
    const double t = (profile.traps.grid_spacing + profile.traps.beam_width) / profile.transport.max_speed;
    return HopCost{t, profile.tweezer_power() * t};
}

namespace {

double transport_hops(std::int64_t n, const HardwareProfile& profile) {
    const double nd = static_cast<double>(n);
    return profile.transport.transports_per_gate_slope * nd * (nd - 1.0) * mean_pair_distance(n);
}

}  // namespace

double transport_energy_analytic(std::int64_t n, const HardwareProfile& profile) {
    return transport_hops(n, profile) * single_hop_cost(profile).energy;
}

double transport_time_analytic(std::int64_t n, const HardwareProfile& profile) {
    return transport_hops(n, profile) * single_hop_cost(profile).time;
}

std::string_view to_string(TransportPolicy policy) {
    return policy == TransportPolicy::MoveAdjacentAndReturn ? "move_adjacent_and_return" : "move_adjacent_stay";
}

TransportPolicy transport_policy_from_string(std::string_view text) {
    if (text == "move_adjacent_and_return") {
        return TransportPolicy::MoveAdjacentAndReturn;
    }
    if (text == "move_adjacent_stay") {
        return TransportPolicy::MoveAdjacentStay;
    }
    throw std::invalid_argument("unknown transport policy '" + std::string(text) + "'");
}

namespace {

struct Cell {
    int row;
    int col;
};

class Grid {
public:
    explicit Grid(const GridLayout& layout) : side_(layout.side), cell_of_(layout.occupancy) {
        atom_at_.assign(static_cast<std::size_t>(side_) * side_, -1);
        for (std::size_t a = 0; a < cell_of_.size(); ++a) {
            atom_at_[static_cast<std::size_t>(cell_of_[a])] = static_cast<int>(a);
        }
    }

    [[nodiscard]] Cell cell(int index) const { return {index / side_, index % side_}; }
    [[nodiscard]] int index(Cell c) const { return c.row * side_ + c.col; }
    [[nodiscard]] int side() const { return side_; }
    [[nodiscard]] int position(int atom) const { return cell_of_[static_cast<std::size_t>(atom)]; }
    [[nodiscard]] int occupant(int cell) const { return atom_at_[static_cast<std::size_t>(cell)]; }

    void place(int atom, int cell) {
        cell_of_[static_cast<std::size_t>(atom)] = cell;
        atom_at_[static_cast<std::size_t>(cell)] = atom;
    }

    void clear(int cell) { atom_at_[static_cast<std::size_t>(cell)] = -1; }

private:
    int side_;
    std::vector<int> cell_of_;
    std::vector<int> atom_at_;
};

int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)); }
int manhattan(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col); }
double euclidean(Cell a, Cell b) { return std::hypot(double(a.row - b.row), double(a.col - b.col)); }

}  // namespace

TransportSimResult simulate_transports(const TransportSimConfig& config) {
    if (config.n_atoms < 2) {
        throw std::invalid_argument("transport simulation needs at least two atoms");
    }
    if (config.gates < 0) {
        throw std::invalid_argument("gate count must be non-negative");
    }
    if (!(config.blockade_radius > 0.0)) {
        throw std::invalid_argument("blockade radius must be positive");
    }
    Grid grid(GridLayout::filled(config.n_atoms, 1.0));
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<int> first(0, config.n_atoms - 1);
    std::uniform_int_distribution<int> second(0, config.n_atoms - 2);
    const int reach = static_cast<int>(std::floor(config.blockade_radius));

    TransportSimResult result;
    result.trace.reserve(static_cast<std::size_t>(config.gates));
    for (std::int64_t g = 1; g <= config.gates; ++g) {
        const int a = first(rng);
        int b = second(rng);
        if (b >= a) {
            ++b;
        }
        const Cell home_a = grid.cell(grid.position(a));
        const Cell home_b = grid.cell(grid.position(b));
        if (chebyshev(home_a, home_b) > config.blockade_radius) {
            // Nearest cell to b inside a's blockade window; ties by Euclidean
            // distance then by cell index.
            int best = -1;
            int best_hops = std::numeric_limits<int>::max();
            double best_dist = std::numeric_limits<double>::infinity();
            for (int r = std::max(0, home_a.row - reach); r <= std::min(grid.side() - 1, home_a.row + reach); ++r) {
                for (int c = std::max(0, home_a.col - reach); c <= std::min(grid.side() - 1, home_a.col + reach);
                     ++c) {
                    const Cell cand{r, c};
                    if (r == home_a.row && c == home_a.col) {
                        continue;
                    }
                    const int hops = manhattan(home_b, cand);
                    const double dist = euclidean(home_b, cand);
                    if (hops < best_hops || (hops == best_hops && dist < best_dist)) {
                        best = grid.index(cand);
                        best_hops = hops;
                        best_dist = dist;
                    }
                }
            }
            const Cell dest = grid.cell(best);
            if (config.policy == TransportPolicy::MoveAdjacentAndReturn) {
                result.transports += 1;
                result.hops += 2 * best_hops;
                result.distance += 2.0 * best_dist;
            } else {
                const int from = grid.position(b);
                const int displaced = grid.occupant(best);
                grid.clear(from);
                grid.place(b, best);
                result.transports += 1;
                result.hops += best_hops;
                result.distance += best_dist;
                if (displaced >= 0) {
                    grid.place(displaced, from);
                    result.transports += 1;
                    result.hops += manhattan(dest, home_b);
                    result.distance += euclidean(dest, home_b);
                }
            }
        }
        result.trace.push_back(TransportSample{g, result.transports, result.hops, result.distance});
    }

    if (result.trace.size() >= 2) {
        std::vector<double> x;
        std::vector<double> y;
        x.reserve(result.trace.size());
        y.reserve(result.trace.size());
        for (const auto& s : result.trace) {
            x.push_back(static_cast<double>(s.gate_index));
            y.push_back(static_cast<double>(s.transports));
        }
        result.fit = linear_fit(x, y);
    }
    return result;
}

std::string transport_trace_csv(const TransportSimResult& result) {
    std::string out = "gate_index,cumulative_transports,cumulative_hops\n";
    for (const auto& s : result.trace) {
        out += fmt::format("{},{},{}\n", s.gate_index, s.transports, s.hops);
    }
    return out;
}

nlohmann::json transport_summary_json(const TransportSimResult& result, const TransportSimConfig& config,
                                      double analytic_slope) {
    return nlohmann::json{
        {"n_atoms", config.n_atoms},
        {"gates", config.gates},
        {"policy", std::string(to_string(config.policy))},
        {"blockade_radius", config.blockade_radius},
        {"seed", config.seed},
        {"transports", result.transports},
        {"hops_manhattan", result.hops},
        {"distance_euclidean", result.distance},
        {"slope", result.fit.slope},
        {"intercept", result.fit.intercept},
        {"r_squared", result.fit.r_squared},
        {"analytic_slope", analytic_slope},
    };
}

}  // namespace rydberg
