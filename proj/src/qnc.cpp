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

#include "dqc/qnc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "dqc/error.hpp"

namespace dqc::qnc {

std::string_view to_string(Section s) {
    switch (s) {
        case Section::network:
            return "network";
        case Section::storage:
            return "storage";
        case Section::computer:
            return "computer";
    }
    return "?";
}

Section section_from_string(std::string_view name) {
    if (name == "network") {
        return Section::network;
    }
    if (name == "storage") {
        return Section::storage;
    }
    if (name == "computer") {
        return Section::computer;
    }
    throw Error(ErrorKind::InvalidConfig, "unknown section '" + std::string(name) + "'");
}

CardLayout::CardLayout(std::vector<Section> sections, std::vector<std::pair<std::size_t, std::size_t>> edges,
                       Nanos swap_cost)
    : sections_(std::move(sections)), adjacency_(sections_.size()), swap_cost_(swap_cost) {
    if (swap_cost_ < 0) {
        throw Error(ErrorKind::InvalidConfig, "swap_cost must be non-negative");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
        if (a >= sections_.size() || b >= sections_.size()) {
            throw Error(ErrorKind::InvalidConfig,
                        "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") references an unknown qubit");
        }
        if (a == b) {
            throw Error(ErrorKind::InvalidConfig, "self-loop on qubit " + std::to_string(a));
        }
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            continue;
        }
        edges_.emplace_back(a, b);
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto &n : adjacency_) {
        std::sort(n.begin(), n.end());
    }
}

CardLayout CardLayout::ladder(std::size_t width, Nanos swap_cost) {
    if (width == 0) {
        throw Error(ErrorKind::InvalidConfig, "ladder width must be positive");
    }
    std::vector<Section> sections;
    for (Section s : {Section::network, Section::storage, Section::computer}) {
        sections.insert(sections.end(), width, s);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t row = 0; row < 3; ++row) {
        for (std::size_t col = 0; col < width; ++col) {
            std::size_t q = row * width + col;
            if (col + 1 < width) {
                edges.emplace_back(q, q + 1);
            }
            if (row + 1 < 3) {
                edges.emplace_back(q, q + width);
            }
        }
    }
    return CardLayout(std::move(sections), std::move(edges), swap_cost);
}

CardLayout CardLayout::default_layout(Nanos t_gate) {
    return ladder(2, 3 * t_gate);
}

Section CardLayout::section(std::size_t q) const {
    if (q >= sections_.size()) {
        throw Error(ErrorKind::UnknownQubit, "qubit " + std::to_string(q) + " is not on the card");
    }
    return sections_[q];
}

const std::vector<std::size_t> &CardLayout::neighbors(std::size_t q) const {
    if (q >= adjacency_.size()) {
        throw Error(ErrorKind::UnknownQubit, "qubit " + std::to_string(q) + " is not on the card");
    }
    return adjacency_[q];
}

bool CardLayout::has_edge(std::size_t a, std::size_t b) const {
    const auto &n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

std::vector<std::size_t> CardLayout::qubits_in(Section s) const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < sections_.size(); ++q) {
        if (sections_[q] == s) {
            out.push_back(q);
        }
    }
    return out;
}

bool CardLayout::is_connected() const {
    if (sections_.empty()) {
        return true;
    }
    std::vector<bool> seen(sections_.size(), false);
    std::deque<std::size_t> frontier{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!frontier.empty()) {
        std::size_t q = frontier.front();
        frontier.pop_front();
        for (std::size_t n : adjacency_[q]) {
            if (!seen[n]) {
                seen[n] = true;
                ++count;
                frontier.push_back(n);
            }
        }
    }
    return count == sections_.size();
}

void CardLayout::validate_connected() const {
    for (Section s : {Section::network, Section::storage, Section::computer}) {
        if (qubits_in(s).empty()) {
            throw Error(ErrorKind::InvalidConfig, "section '" + std::string(to_string(s)) + "' has no qubits");
        }
    }
    if (!is_connected()) {
        throw Error(ErrorKind::InvalidConfig, "coupling graph is not connected");
    }
}

Route swap_route(const CardLayout &layout, std::size_t from, std::size_t to) {
    layout.section(from);
    layout.section(to);
    if (from == to) {
        return {};
    }
    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(layout.num_qubits(), kUnseen);
    parent[from] = from;
    std::deque<std::size_t> frontier{from};
    while (!frontier.empty() && parent[to] == kUnseen) {
        std::size_t q = frontier.front();
        frontier.pop_front();
        for (std::size_t n : layout.neighbors(q)) {
            if (parent[n] == kUnseen) {
                parent[n] = q;
                frontier.push_back(n);
            }
        }
    }
    if (parent[to] == kUnseen) {
        throw Error(ErrorKind::NoRoute, "no path from " + std::to_string(from) + " to " + std::to_string(to));
    }
    Route r;
    for (std::size_t q = to; q != from; q = parent[q]) {
        r.path.push_back(q);
    }
    r.path.push_back(from);
    std::reverse(r.path.begin(), r.path.end());
    r.cost = static_cast<Nanos>(r.swaps()) * layout.swap_cost();
    return r;
}

bool should_swap_to_storage(Nanos expected_hold, Nanos route_cost, bool network_demand) {
    return network_demand && expected_hold > route_cost;
}

Placement plan_allocation(const CardLayout &layout, std::span<const Request> requests, const AllocationPolicy &policy) {
    const auto network = layout.qubits_in(Section::network);
    const auto storage = layout.qubits_in(Section::storage);
    if (requests.size() > network.size() + storage.size()) {
        throw Error(ErrorKind::CardFull, std::to_string(requests.size()) + " photons exceed " +
                                             std::to_string(network.size() + storage.size()) +
                                             " network + storage qubits");
    }
    std::set<std::string> ids;
    for (const auto &r : requests) {
        if (!ids.insert(r.photon).second) {
            throw Error(ErrorKind::InvalidConfig, "duplicate photon id '" + r.photon + "'");
        }
        if (r.expected_hold < 0) {
            throw Error(ErrorKind::InvalidConfig, "expected hold must be non-negative");
        }
    }

    std::map<std::size_t, std::string> occupant;
    auto free_in = [&](const std::vector<std::size_t> &qs) {
        std::vector<std::size_t> out;
        std::copy_if(qs.begin(), qs.end(), std::back_inserter(out), [&](std::size_t q) { return !occupant.count(q); });
        return out;
    };

    Placement placement;
    std::map<std::string, std::size_t> final_qubit;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const Request &req = requests[i];
        auto free_network = free_in(network);
        if (free_network.empty()) {
            throw Error(ErrorKind::CardFull, "no free network qubit for photon '" + req.photon + "'");
        }
        std::size_t q = free_network.front();
        occupant[q] = req.photon;
        final_qubit[req.photon] = q;

        const std::size_t later = requests.size() - i - 1;
        const bool demand = later > free_network.size() - 1;
        if (!policy.allow_swaps || !demand) {
            continue;
        }
        // Cheapest free storage qubit whose route passes only through empty qubits.
        std::optional<Route> best;
        for (std::size_t s : free_in(storage)) {
            Route r;
            try {
                r = swap_route(layout, q, s);
            } catch (const Error &) {
                continue;
            }
            bool clear = std::all_of(r.path.begin() + 1, r.path.end() - 1,
                                     [&](std::size_t via) { return !occupant.count(via); });
            if (clear && (!best || r.cost < best->cost)) {
                best = std::move(r);
            }
        }
        if (!best || !should_swap_to_storage(req.expected_hold, best->cost, demand)) {
            continue;
        }
        for (std::size_t j = 0; j + 1 < best->path.size(); ++j) {
            placement.swaps.push_back({req.photon, best->path[j], best->path[j + 1]});
        }
        occupant.erase(q);
        occupant[best->path.back()] = req.photon;
        final_qubit[req.photon] = best->path.back();
    }
    for (const auto &r : requests) {
        placement.assignment.emplace_back(r.photon, final_qubit.at(r.photon));
    }
    return placement;
}

nlohmann::json to_json(const CardLayout &layout) {
    nlohmann::json sections = nlohmann::json::object();
    for (std::size_t q = 0; q < layout.num_qubits(); ++q) {
        sections[std::to_string(q)] = to_string(layout.section(q));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : layout.edges()) {
        edges.push_back({a, b});
    }
    return {{"sections", std::move(sections)}, {"edges", std::move(edges)}, {"swap_cost", layout.swap_cost()}};
}

CardLayout layout_from_json(const nlohmann::json &j) {
    try {
        const auto &sec = j.at("sections");
        std::vector<Section> sections(sec.size());
        std::vector<bool> seen(sec.size(), false);
        for (const auto &[key, value] : sec.items()) {
            std::size_t q = std::stoul(key);
            if (q >= sections.size() || seen[q]) {
                throw Error(ErrorKind::InvalidConfig, "section keys must be the qubits 0..n-1 exactly once");
            }
            seen[q] = true;
            sections[q] = section_from_string(value.get<std::string>());
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw Error(ErrorKind::InvalidConfig, "edge must be [a, b]");
            }
            edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        }
        CardLayout layout(std::move(sections), std::move(edges), j.at("swap_cost").get<Nanos>());
        layout.validate_connected();
        return layout;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    } catch (const std::invalid_argument &) {
        throw Error(ErrorKind::InvalidConfig, "section keys must be qubit indices");
    }
}

nlohmann::json to_json(const Placement &placement) {
    nlohmann::json assignment = nlohmann::json::array();
    for (const auto &[photon, q] : placement.assignment) {
        assignment.push_back({{"photon", photon}, {"qubit", q}});
    }
    nlohmann::json swaps = nlohmann::json::array();
    for (const auto &s : placement.swaps) {
        swaps.push_back({{"photon", s.photon}, {"from", s.from}, {"to", s.to}});
    }
    return {{"assignment", std::move(assignment)}, {"swaps", std::move(swaps)}};
}

}  // namespace dqc::qnc
