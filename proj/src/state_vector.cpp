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

#include "dqc/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqc/error.hpp"

namespace dqc {

namespace {

constexpr std::size_t kMaxQubits = 20;

std::size_t bit_position(std::size_t num_qubits, std::size_t qubit) {
    return num_qubits - 1 - qubit;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw Error(ErrorKind::InvalidBasisIndex, "num_qubits must be in 1.." + std::to_string(kMaxQubits));
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw Error(ErrorKind::InvalidBasisIndex,
                    "basis index " + std::to_string(index) + " >= 2^" + std::to_string(num_qubits));
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) {
        ++n;
    }
    if (n == 0 || (std::size_t{1} << n) != amplitudes.size() || n > kMaxQubits) {
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count " + std::to_string(amplitudes.size()) + " is not 2^n for n >= 1");
    }
    double total = 0.0;
    for (const auto &a : amplitudes) {
        total += std::norm(a);
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized, "squared norm is " + std::to_string(total));
    }
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

void StateVector::check_qubit(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw Error(ErrorKind::InvalidTargets,
                    "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply(const Operator &op, std::span<const std::size_t> targets, Renormalize renormalize) {
    if (targets.size() != op.arity()) {
        throw Error(ErrorKind::InvalidTargets, "operator '" + op.name() + "' has arity " +
                                                   std::to_string(op.arity()) + " but got " +
                                                   std::to_string(targets.size()) + " targets");
    }
    std::size_t target_mask = 0;
    std::vector<std::size_t> masks(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        check_qubit(targets[i]);
        std::size_t m = std::size_t{1} << bit_position(num_qubits_, targets[i]);
        if (target_mask & m) {
            throw Error(ErrorKind::InvalidTargets, "duplicate target " + std::to_string(targets[i]));
        }
        target_mask |= m;
        masks[i] = m;
    }

    const std::size_t sub_dim = op.dim();
    // offsets[s] = global index bits for sub-index s (targets[0] is the MSB of s).
    std::vector<std::size_t> offsets(sub_dim, 0);
    for (std::size_t s = 0; s < sub_dim; ++s) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if ((s >> (targets.size() - 1 - i)) & 1U) {
                offsets[s] |= masks[i];
            }
        }
    }

    std::vector<Complex> in(sub_dim);
    for (std::size_t base = 0; base < amplitudes_.size(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t s = 0; s < sub_dim; ++s) {
            in[s] = amplitudes_[base | offsets[s]];
        }
        for (std::size_t r = 0; r < sub_dim; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < sub_dim; ++c) {
                acc += op.at(r, c) * in[c];
            }
            amplitudes_[base | offsets[r]] = acc;
        }
    }

    if (!op.is_unitary() && renormalize == Renormalize::yes) {
        double n = norm();
        if (n < kAnnihilationThreshold) {
            throw Error(ErrorKind::AnnihilatedState, "operator '" + op.name() + "' annihilated the state");
        }
        for (auto &a : amplitudes_) {
            a /= n;
        }
        norm_log_.push_back(n);
    }
}

double StateVector::probability(std::size_t qubit, int bit) const {
    check_qubit(qubit);
    std::size_t mask = std::size_t{1} << bit_position(num_qubits_, qubit);
    double p = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (((i & mask) != 0) == (bit != 0)) {
            p += std::norm(amplitudes_[i]);
        }
    }
    return p;
}

void StateVector::collapse(std::size_t qubit, int bit, double probability) {
    std::size_t mask = std::size_t{1} << bit_position(num_qubits_, qubit);
    double scale = 1.0 / std::sqrt(probability);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (((i & mask) != 0) == (bit != 0)) {
            amplitudes_[i] *= scale;
        } else {
            amplitudes_[i] = 0.0;
        }
    }
}

Measurement StateVector::measure(std::size_t qubit, std::mt19937_64 &rng) {
    double p1 = probability(qubit, 1);
    double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    int bit = r < p1 ? 1 : 0;
    double p = bit ? p1 : 1.0 - p1;
    collapse(qubit, bit, p);
    return {bit, p};
}

Measurement StateVector::measure_forced(std::size_t qubit, int bit) {
    if (bit != 0 && bit != 1) {
        throw Error(ErrorKind::ImpossibleOutcome, "outcome must be 0 or 1");
    }
    double p = probability(qubit, bit);
    if (p <= kAnnihilationThreshold) {
        throw Error(ErrorKind::ImpossibleOutcome, "outcome " + std::to_string(bit) + " on qubit " +
                                                      std::to_string(qubit) + " has probability " +
                                                      std::to_string(p));
    }
    collapse(qubit, bit, p);
    return {bit, p};
}

double fidelity_up_to_phase(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(a.num_qubits()) + " vs " +
                                                      std::to_string(b.num_qubits()) + " qubits");
    }
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Complex> out;
    out.reserve(a.amplitudes().size() * b.amplitudes().size());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector extract_subsystem(const StateVector &state, std::span<const std::size_t> keep) {
    const std::size_t n = state.num_qubits();
    std::size_t keep_mask = 0;
    for (auto q : keep) {
        if (q >= n) {
            throw Error(ErrorKind::InvalidTargets, "qubit " + std::to_string(q) + " out of range");
        }
        std::size_t m = std::size_t{1} << bit_position(n, q);
        if (keep_mask & m) {
            throw Error(ErrorKind::InvalidTargets, "duplicate qubit " + std::to_string(q));
        }
        keep_mask |= m;
    }
    // The discarded qubits' definite values are read off the dominant amplitude.
    auto amps = state.amplitudes();
    std::size_t dominant = 0;
    for (std::size_t i = 1; i < amps.size(); ++i) {
        if (std::norm(amps[i]) > std::norm(amps[dominant])) {
            dominant = i;
        }
    }
    std::size_t rest_bits = dominant & ~keep_mask;

    std::vector<Complex> out(std::size_t{1} << keep.size());
    double captured = 0.0;
    for (std::size_t s = 0; s < out.size(); ++s) {
        std::size_t idx = rest_bits;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if ((s >> (keep.size() - 1 - i)) & 1U) {
                idx |= std::size_t{1} << bit_position(n, keep[i]);
            }
        }
        out[s] = amps[idx];
        captured += std::norm(out[s]);
    }
    double total = state.norm() * state.norm();
    if (std::abs(captured - total) > 1e-10) {
        throw Error(ErrorKind::NotProductState, "discarded qubits are not in a definite basis state");
    }
    double scale = 1.0 / std::sqrt(captured);
    for (auto &a : out) {
        a *= scale;
    }
    return StateVector::from_amplitudes(std::move(out));
}

nlohmann::json to_json(const StateVector &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto &a : state.amplitudes()) {
        amps.push_back(complex_to_json(a));
    }
    return {{"num_qubits", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("num_qubits") || !j.contains("amplitudes")) {
        throw Error(ErrorKind::InvalidConfig, "state JSON needs num_qubits and amplitudes");
    }
    std::vector<Complex> amps;
    for (const auto &c : j.at("amplitudes")) {
        amps.push_back(complex_from_json(c));
    }
    auto n = j.at("num_qubits").get<std::size_t>();
    if (amps.size() != (std::size_t{1} << n)) {
        throw Error(ErrorKind::DimensionMismatch, "amplitude count does not match num_qubits");
    }
    return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace dqc
