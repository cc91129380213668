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
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dqc::timeline {

/// Integer nanoseconds.
using Nanos = std::int64_t;

inline constexpr Nanos kNoDeadline = std::numeric_limits<Nanos>::max();

// Gate counts of each correction.
inline constexpr int kXGates = 1;
inline constexpr int kZGates = 1;
inline constexpr int kFGates = 1;
inline constexpr int kConjugatedZGates = 3;
/// Largest async correction sequence (F plus U^-1 Z U).
inline constexpr int kMaxAsyncCorrectionGates = kFGates + kConjugatedZGates;

struct LatencyModel {
    Nanos t_epr = 0;
    Nanos t_cl = 0;
    Nanos t_gate = 0;
    Nanos t_meas = 0;
    /// Per-qubit budget from first use to last action.
    Nanos t_coh = kNoDeadline;

    /// Throws InvalidConfig on a negative duration.
    void validate() const;
};

enum class Family { teledata, telegate };
enum class Variant { sync, async };

struct Branch {
    bool x_fires = true;
    bool z_fires = true;
};

struct Event {
    Nanos start = 0;
    Nanos end = 0;
    std::string node;
    std::string action;
    std::vector<std::string> qubits;
};

struct DecoherenceViolation {
    std::string qubit;
    Nanos first_use = 0;
    Nanos last_use = 0;

    Nanos span() const {
        return last_use - first_use;
    }
};

struct Timeline {
    /// Sorted by (start, node).
    std::vector<Event> events;
    Nanos makespan = 0;
    std::vector<DecoherenceViolation> violations;
};

/// Schedules one protocol execution with `k` local gates on the target node after the
/// remote operation; k includes the protocol's own final CNot into B for teledata.
///
/// Each node is a single execution unit. Both variants share the EPR wait, the
/// pre-measurement gates and the measurement. The sync variant then waits for the
/// classical bits, corrects (X, Z: one gate each) and runs the k-gate suffix. The
/// async variant runs the suffix as soon as its node's measurement round ends,
/// overlapping the classical transfer, and corrects afterwards (F: one gate,
/// U^-1 Z U: three). In telegate the Z correction lands on A, and the async variant
/// applies it as U^-1 Z U there too.
Timeline schedule(Family family, Variant variant, std::size_t k, const LatencyModel &model, Branch branch = {});

/// Qubits whose span from first use to last action exceeds t_coh.
std::vector<DecoherenceViolation> check_decoherence(const Timeline &timeline, const LatencyModel &model);

struct ScenarioSummary {
    Nanos makespan_sync = 0;
    Nanos makespan_async = 0;
    /// makespan_sync - makespan_async with both corrections firing.
    Nanos hidden_latency = 0;
    /// Averages over the four equally likely (x, z) correction branches.
    double expected_makespan_sync = 0.0;
    double expected_makespan_async = 0.0;
    double expected_hidden_latency = 0.0;
    std::size_t violations_sync = 0;
    std::size_t violations_async = 0;
};

ScenarioSummary summarize(Family family, std::size_t k, const LatencyModel &model);

nlohmann::json to_json(const Timeline &timeline);

/// Tracks which qubits await correction bits and which qubits share an entanglement
/// class. Classes merge on every two-qubit gate and never split, so the relation
/// over-approximates real entanglement.
class DependencyTracker {
   public:
    explicit DependencyTracker(std::size_t num_qubits);

    struct Decision {
        bool allowed = true;
        /// Classical bits the qubit's class still waits for, sorted.
        std::vector<std::string> awaiting;
    };

    std::size_t num_qubits() const noexcept {
        return parent_.size();
    }

    void entangle(std::size_t q1, std::size_t q2);
    void await_correction(std::size_t qubit, const std::string &bit);

    /// Allowed iff no qubit in `qubit`'s class has a pending correction. A deferred
    /// measurement is queued and released by deliver().
    Decision guard_measurement(std::size_t qubit);

    /// Marks `bit` as arrived and its corrections applied. Returns the queued
    /// measurements that became allowed, in queue order.
    std::vector<std::size_t> deliver(const std::string &bit);

    bool same_class(std::size_t q1, std::size_t q2);
    const std::vector<std::size_t> &deferred() const noexcept {
        return deferred_;
    }

   private:
    std::size_t find(std::size_t q);
    void check(std::size_t q) const;
    std::vector<std::string> awaiting_for(std::size_t q);

    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::set<std::pair<std::size_t, std::string>> pending_;
    std::vector<std::size_t> deferred_;
};

}  // namespace dqc::timeline
