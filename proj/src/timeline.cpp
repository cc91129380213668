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

#include "dqc/timeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dqc/error.hpp"

namespace dqc::timeline {

void LatencyModel::validate() const {
    if (t_epr < 0 || t_cl < 0 || t_gate < 0 || t_meas < 0 || t_coh < 0) {
        throw Error(ErrorKind::InvalidConfig, "latency durations must be non-negative");
    }
}

namespace {

class Builder {
   public:
    Nanos run(const std::string &node, Nanos earliest, Nanos duration, std::string action,
              std::vector<std::string> qubits) {
        Nanos &free_at = free_at_[node];
        Nanos start = std::max(free_at, earliest);
        Nanos end = start + duration;
        free_at = end;
        events_.push_back({start, end, node, std::move(action), std::move(qubits)});
        return end;
    }

    Nanos gates(const std::string &node, Nanos earliest, Nanos t_gate, int count, const std::string &action,
                const std::vector<std::string> &qubits) {
        Nanos end = earliest;
        for (int i = 0; i < count; ++i) {
            end = run(node, end, t_gate, action, qubits);
        }
        return end;
    }

    Timeline finish(const LatencyModel &model) {
        std::stable_sort(events_.begin(), events_.end(), [](const Event &a, const Event &b) {
            return std::tie(a.start, a.node) < std::tie(b.start, b.node);
        });
        Timeline t;
        for (const auto &e : events_) {
            t.makespan = std::max(t.makespan, e.end);
        }
        t.events = std::move(events_);
        t.violations = check_decoherence(t, model);
        return t;
    }

   private:
    std::map<std::string, Nanos> free_at_;
    std::vector<Event> events_;
};

void conjugated_z(Builder &b, const std::string &node, Nanos earliest, Nanos g, const std::string &qubit) {
    Nanos t = b.run(node, earliest, g, "u^-1 " + qubit, {qubit});
    t = b.run(node, t, g, "z " + qubit, {qubit});
    b.run(node, t, g, "u " + qubit, {qubit});
}

Nanos suffix(Builder &b, Nanos earliest, Nanos g, std::size_t k, bool teledata) {
    Nanos t = earliest;
    for (std::size_t i = 0; i < k; ++i) {
        if (teledata && i == 0) {
            t = b.run("B", t, g, "cnot photon_B->B", {"photon_B", "B"});
        } else {
            t = b.run("B", t, g, "local gate B", {"B"});
        }
    }
    return t;
}

Timeline schedule_teledata(Variant variant, std::size_t k, const LatencyModel &m, Branch br) {
    Builder b;
    const Nanos g = m.t_gate;
    Nanos t = b.run("epr", 0, m.t_epr, "distribute EPR pair", {"photon_A", "photon_B"});
    t = b.run("A", t, g, "cnot A->photon_A", {"A", "photon_A"});
    t = b.run("A", t, g, "h A", {"A"});
    const Nanos measured = b.run("A", t, m.t_meas, "measure A, photon_A", {"A", "photon_A"});
    const Nanos arrival = b.run("A->B", measured, m.t_cl, "send cA", {});

    if (variant == Variant::sync) {
        t = arrival;
        if (br.x_fires) {
            t = b.gates("B", t, g, kXGates, "x photon_B", {"photon_B"});
        }
        if (br.z_fires) {
            t = b.gates("B", t, g, kZGates, "z photon_B", {"photon_B"});
        }
        suffix(b, t, g, k, true);
    } else {
        t = suffix(b, measured, g, k, true);
        t = std::max(t, arrival);
        if (br.x_fires) {
            t = b.gates("B", t, g, kFGates, "f photon_B,B", {"photon_B", "B"});
        }
        if (br.z_fires) {
            conjugated_z(b, "B", t, g, "B");
        }
    }
    return b.finish(m);
}

Timeline schedule_telegate(Variant variant, std::size_t k, const LatencyModel &m, Branch br) {
    Builder b;
    const Nanos g = m.t_gate;
    const Nanos epr = b.run("epr", 0, m.t_epr, "distribute EPR pair", {"photon_A", "photon_B"});

    Nanos t = b.run("A", epr, g, "cnot A->photon_A", {"A", "photon_A"});
    const Nanos measured_a = b.run("A", t, m.t_meas, "measure photon_A", {"photon_A"});
    t = b.run("B", epr, g, "cnot photon_B->B", {"photon_B", "B"});
    t = b.run("B", t, g, "h photon_B", {"photon_B"});
    const Nanos measured_b = b.run("B", t, m.t_meas, "measure photon_B", {"photon_B"});

    const Nanos arrival_b = b.run("A->B", measured_a, m.t_cl, "send cA", {});
    const Nanos arrival_a = b.run("B->A", measured_b, m.t_cl, "send cB", {});

    if (variant == Variant::sync) {
        t = std::max(measured_b, arrival_b);
        if (br.x_fires) {
            t = b.gates("B", t, g, kXGates, "x B", {"B"});
        }
        suffix(b, t, g, k, false);
        if (br.z_fires) {
            b.gates("A", arrival_a, g, kZGates, "z A", {"A"});
        }
    } else {
        t = suffix(b, measured_b, g, k, false);
        t = std::max(t, arrival_b);
        if (br.x_fires) {
            b.gates("B", t, g, kFGates, "f B", {"B"});
        }
        if (br.z_fires) {
            conjugated_z(b, "A", arrival_a, g, "A");
        }
    }
    return b.finish(m);
}

}  // namespace

Timeline schedule(Family family, Variant variant, std::size_t k, const LatencyModel &model, Branch branch) {
    model.validate();
    return family == Family::teledata ? schedule_teledata(variant, k, model, branch)
                                      : schedule_telegate(variant, k, model, branch);
}

std::vector<DecoherenceViolation> check_decoherence(const Timeline &timeline, const LatencyModel &model) {
    std::map<std::string, std::pair<Nanos, Nanos>> usage;
    for (const auto &e : timeline.events) {
        for (const auto &q : e.qubits) {
            auto [it, inserted] = usage.try_emplace(q, e.start, e.end);
            if (!inserted) {
                it->second.first = std::min(it->second.first, e.start);
                it->second.second = std::max(it->second.second, e.end);
            }
        }
    }
    std::vector<DecoherenceViolation> out;
    if (model.t_coh == kNoDeadline) {
        return out;
    }
    for (const auto &[qubit, span] : usage) {
        if (span.second - span.first > model.t_coh) {
            out.push_back({qubit, span.first, span.second});
        }
    }
    return out;
}

ScenarioSummary summarize(Family family, std::size_t k, const LatencyModel &model) {
    ScenarioSummary s;
    Timeline sync = schedule(family, Variant::sync, k, model);
    Timeline async = schedule(family, Variant::async, k, model);
    s.makespan_sync = sync.makespan;
    s.makespan_async = async.makespan;
    s.hidden_latency = sync.makespan - async.makespan;
    s.violations_sync = sync.violations.size();
    s.violations_async = async.violations.size();

    Nanos total_sync = 0;
    Nanos total_async = 0;
    for (bool x : {false, true}) {
        for (bool z : {false, true}) {
            total_sync += schedule(family, Variant::sync, k, model, {x, z}).makespan;
            total_async += schedule(family, Variant::async, k, model, {x, z}).makespan;
        }
    }
    s.expected_makespan_sync = static_cast<double>(total_sync) / 4.0;
    s.expected_makespan_async = static_cast<double>(total_async) / 4.0;
    s.expected_hidden_latency = s.expected_makespan_sync - s.expected_makespan_async;
    return s;
}

nlohmann::json to_json(const Timeline &timeline) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto &e : timeline.events) {
        events.push_back(
            {{"start", e.start}, {"end", e.end}, {"node", e.node}, {"action", e.action}, {"qubits", e.qubits}});
    }
    nlohmann::json violations = nlohmann::json::array();
    for (const auto &v : timeline.violations) {
        violations.push_back({{"qubit", v.qubit}, {"first_use", v.first_use}, {"last_use", v.last_use}});
    }
    return {{"makespan", timeline.makespan}, {"events", std::move(events)}, {"violations", std::move(violations)}};
}

DependencyTracker::DependencyTracker(std::size_t num_qubits) : parent_(num_qubits), size_(num_qubits, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

void DependencyTracker::check(std::size_t q) const {
    if (q >= parent_.size()) {
        throw Error(ErrorKind::UnknownQubit, "qubit " + std::to_string(q) + " is not registered");
    }
}

std::size_t DependencyTracker::find(std::size_t q) {
    check(q);
    while (parent_[q] != q) {
        parent_[q] = parent_[parent_[q]];
        q = parent_[q];
    }
    return q;
}

void DependencyTracker::entangle(std::size_t q1, std::size_t q2) {
    std::size_t a = find(q1);
    std::size_t b = find(q2);
    if (a == b) {
        return;
    }
    if (size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
}

void DependencyTracker::await_correction(std::size_t qubit, const std::string &bit) {
    check(qubit);
    pending_.emplace(qubit, bit);
}

bool DependencyTracker::same_class(std::size_t q1, std::size_t q2) {
    return find(q1) == find(q2);
}

std::vector<std::string> DependencyTracker::awaiting_for(std::size_t q) {
    std::size_t root = find(q);
    std::set<std::string> bits;
    for (const auto &[pq, bit] : pending_) {
        if (find(pq) == root) {
            bits.insert(bit);
        }
    }
    return {bits.begin(), bits.end()};
}

DependencyTracker::Decision DependencyTracker::guard_measurement(std::size_t qubit) {
    Decision d;
    d.awaiting = awaiting_for(qubit);
    d.allowed = d.awaiting.empty();
    if (!d.allowed) {
        deferred_.push_back(qubit);
    }
    return d;
}

std::vector<std::size_t> DependencyTracker::deliver(const std::string &bit) {
    std::erase_if(pending_, [&](const auto &entry) { return entry.second == bit; });
    std::vector<std::size_t> released;
    std::vector<std::size_t> still;
    for (std::size_t q : deferred_) {
        if (awaiting_for(q).empty()) {
            released.push_back(q);
        } else {
            still.push_back(q);
        }
    }
    deferred_ = std::move(still);
    return released;
}

}  // namespace dqc::timeline
