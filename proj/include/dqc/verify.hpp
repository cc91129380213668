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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dqc/operator.hpp"
#include "dqc/protocols.hpp"
#include "dqc/state_vector.hpp"
#include "json.hpp"

namespace dqc {

inline constexpr double kDefaultFidelityThreshold = 1.0 - 1e-10;
/// Random suites reject inputs with min(|alpha|, |beta|) below this.
inline constexpr double kRejectionAmplitude = 1e-6;

enum class ProtocolKind { sync_teledata, sync_telegate, async_teledata, async_telegate };

std::string_view to_string(ProtocolKind kind);
/// Accepts "sync-teledata", "teledata", "async-telegate", ... Throws UnknownProtocol.
ProtocolKind protocol_from_string(std::string_view name);

struct ProtocolInputs {
    ProtocolKind kind = ProtocolKind::sync_teledata;
    QubitState psi;
    /// Target state; only read by the telegate variants.
    QubitState phi;
    Operator u = gates::identity();
    ZCorrection z_correction = ZCorrection::conjugated;
    XCorrection x_correction = XCorrection::conjugated;
};

nlohmann::json to_json(const ProtocolInputs &inputs);

ProtocolCircuit build_protocol(const ProtocolInputs &inputs);

// Reference states, built by direct arithmetic on amplitudes (no circuit simulation).

/// (photon_B, B): alpha|00> + beta|11>.
StateVector oracle_sync_teledata(const QubitState &psi);
/// (A, B): alpha|0>|phi> + beta|1>X|phi>.
StateVector oracle_sync_telegate(const QubitState &psi, const QubitState &phi);
/// (photon_B, B): alpha|0>U|0> + beta|1>U|1>.
StateVector oracle_async_teledata(const QubitState &psi, const Operator &u);
/// (A, B0, B1): alpha|0>|phi>U|phi> + beta|1>|phi~>U|phi~>, the middle factor
/// being the CNot copy so that |phi>U|phi> = gamma|0>U|0> + delta|1>U|1>.
StateVector oracle_async_telegate(const QubitState &psi, const QubitState &phi, const Operator &u);
/// Same state by gate composition: CNot(A -> B0) on psi (x) phi (x) |0>, CNot(B0 -> B1), U(B1).
StateVector oracle_async_telegate_by_gates(const QubitState &psi, const QubitState &phi, const Operator &u);

StateVector oracle_for(const ProtocolInputs &inputs);

using Rng = std::mt19937_64;

/// Haar-uniform pure qubit state (normalized complex Gaussian vector).
QubitState haar_qubit(Rng &rng);
/// Haar qubit conditioned on min(|alpha|, |beta|) >= min_amplitude (rejection sampling).
QubitState haar_qubit_nondegenerate(Rng &rng, double min_amplitude = kRejectionAmplitude);
/// Haar-uniform element of U(2).
Operator haar_unitary(Rng &rng);

struct OutcomeFidelity {
    std::size_t trial = 0;
    std::vector<int> outcome;
    double fidelity = 0.0;
};

struct TrialFailure {
    std::size_t trial = 0;
    std::vector<int> outcome;
    double fidelity = 0.0;
    nlohmann::json inputs;
};

struct VerificationReport {
    std::string protocol;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double threshold = kDefaultFidelityThreshold;
    std::vector<OutcomeFidelity> results;
    /// Minimum over `results`; empty when nothing was simulated.
    std::optional<double> min_fidelity;
    std::vector<TrialFailure> failures;
    /// Builder error that prevented any simulation, e.g. "DegenerateAmplitude".
    std::optional<std::string> error;

    bool passed() const {
        return !error && min_fidelity && failures.empty();
    }
};

nlohmann::json to_json(const VerificationReport &report);

/// Simulates the protocol once per forced outcome combination and compares each final
/// output state with the oracle. Builder errors are reported, not thrown.
VerificationReport exhaustive_outcome_suite(const ProtocolInputs &inputs,
                                            double threshold = kDefaultFidelityThreshold);

struct SuiteOptions {
    ZCorrection z_correction = ZCorrection::conjugated;
    XCorrection x_correction = XCorrection::conjugated;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// `trials` Haar-random instances, each run through exhaustive_outcome_suite.
/// Trial i draws from a generator seeded by (seed, i), so the report does not
/// depend on the thread count. Throws UnknownProtocol.
VerificationReport randomized_suite(std::string_view protocol, std::size_t trials, std::uint64_t seed,
                                    double threshold = kDefaultFidelityThreshold, const SuiteOptions &options = {});

}  // namespace dqc
