// Copyright 2026 The dqc Authors
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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqc/timeline.hpp"
#include "json.hpp"

namespace dqc::qnc {

using timeline::Nanos;

enum class Section { network, storage, computer };

std::string_view to_string(Section s);
Section section_from_string(std::string_view name);

/// Qubits of a quantum network card, each dedicated to one section, joined by an
/// undirected coupling graph. Moving a state one edge costs one SWAP.
class CardLayout {
   public:
    /// Throws InvalidConfig on out-of-range or self-loop edges or a negative cost.
    /// Does not require connectivity; see validate_connected().
    CardLayout(std::vector<Section> sections, std::vector<std::pair<std::size_t, std::size_t>> edges,
               Nanos swap_cost);

    /// Three rows (network, storage, computer) of `width` qubits; row-neighbours and
    /// column-neighbours are coupled. Qubits are numbered row by row.
    static CardLayout ladder(std::size_t width, Nanos swap_cost);

    /// ladder(2) with a SWAP priced as three two-qubit gates.
    static CardLayout default_layout(Nanos t_gate);

    std::size_t num_qubits() const noexcept {
        return sections_.size();
    }
    Section section(std::size_t q) const;
    const std::vector<std::size_t> &neighbors(std::size_t q) const;
    const std::vector<std::pair<std::size_t, std::size_t>> &edges() const noexcept {
        return edges_;
    }
    Nanos swap_cost() const noexcept {
        return swap_cost_;
    }
    bool has_edge(std::size_t a, std::size_t b) const;
    std::vector<std::size_t> qubits_in(Section s) const;

    bool is_connected() const;
    /// Throws InvalidConfig unless every section is populated and the graph is connected.
    void validate_connected() const;

   private:
    std::vector<Section> sections_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    Nanos swap_cost_;
};

struct Route {
    /// from ... to inclusive; empty when from == to.
    std::vector<std::size_t> path;
    Nanos cost = 0;

    std::size_t swaps() const {
        return path.empty() ? 0 : path.size() - 1;
    }
};

/// Fewest-SWAP path by breadth-first search, expanding neighbours in index order.
/// Throws NoRoute for disconnected qubits and UnknownQubit for bad indices.
Route swap_route(const CardLayout &layout, std::size_t from, std::size_t to);

/// True iff the network qubit is in demand and the photon will be held longer
/// than moving it costs.
bool should_swap_to_storage(Nanos expected_hold, Nanos route_cost, bool network_demand);

struct Request {
    std::string photon;
    Nanos expected_hold = 0;
};

struct AllocationPolicy {
    bool allow_swaps = true;
};

struct PlannedSwap {
    std::string photon;
    std::size_t from = 0;
    std::size_t to = 0;

    bool operator==(const PlannedSwap &) const = default;
};

struct Placement {
    /// Final qubit of each photon, in request order.
    std::vector<std::pair<std::string, std::size_t>> assignment;
    std::vector<PlannedSwap> swaps;

    bool operator==(const Placement &) const = default;
};

/// Greedy placement of simultaneously held photons: each lands on the lowest free
/// network qubit and moves to the cheapest reachable free storage qubit when later
/// requests would otherwise find the network section full and the move pays off.
/// Throws CardFull when the photons cannot all be held.
Placement plan_allocation(const CardLayout &layout, std::span<const Request> requests,
                          const AllocationPolicy &policy = {});

nlohmann::json to_json(const CardLayout &layout);
CardLayout layout_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Placement &placement);

}  // namespace dqc::qnc
