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
#include <random>
#include <span>
#include <vector>

#include "dqc/operator.hpp"
#include "json.hpp"

namespace dqc {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kAnnihilationThreshold = 1e-12;

enum class Renormalize : bool { no = false, yes = true };

struct Measurement {
    int bit;
    /// Probability of `bit` before collapse.
    double probability;
};

/// Dense pure state over `num_qubits` qubits.
///
/// Qubit 0 is the most significant bit of the basis index. For an operator applied
/// to targets [q1, q2], the operator's own basis index is (bit(q1) << 1) | bit(q2).
class StateVector {
   public:
    static StateVector basis(std::size_t num_qubits, std::size_t index);

    /// Throws NotNormalized unless sum |a_i|^2 = 1 within 1e-12.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t i) const {
        return amplitudes_[i];
    }
    /// Pre-rescale norms of every renormalized nonunitary application, in order.
    const std::vector<double> &norm_log() const noexcept {
        return norm_log_;
    }
    double norm() const;

    /// Unitary operators are applied as-is. A nonunitary operator with
    /// Renormalize::yes rescales to unit norm and logs the pre-rescale norm;
    /// with Renormalize::no the raw image is kept.
    void apply(const Operator &op, std::span<const std::size_t> targets, Renormalize renormalize = Renormalize::yes);
    void apply(const Operator &op, std::initializer_list<std::size_t> targets,
               Renormalize renormalize = Renormalize::yes) {
        apply(op, std::span<const std::size_t>(targets.begin(), targets.size()), renormalize);
    }

    double probability(std::size_t qubit, int bit) const;

    Measurement measure(std::size_t qubit, std::mt19937_64 &rng);
    Measurement measure_forced(std::size_t qubit, int bit);

   private:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    void check_qubit(std::size_t qubit) const;
    void collapse(std::size_t qubit, int bit, double probability);

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
    std::vector<double> norm_log_;
};

/// |<a|b>|^2, clamped to [0, 1].
double fidelity_up_to_phase(const StateVector &a, const StateVector &b);

/// a is the more significant factor.
StateVector tensor(const StateVector &a, const StateVector &b);

/// Reduced pure state of `keep` (in the given order) when every other qubit sits in
/// a definite basis state, e.g. after being measured. Throws NotProductState otherwise.
StateVector extract_subsystem(const StateVector &state, std::span<const std::size_t> keep);

nlohmann::json to_json(const StateVector &state);
StateVector state_from_json(const nlohmann::json &j);

}  // namespace dqc
