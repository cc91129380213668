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

#include "dqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "dqc/error.hpp"

namespace dqc {

std::string_view to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::sync_teledata:
            return "sync-teledata";
        case ProtocolKind::sync_telegate:
            return "sync-telegate";
        case ProtocolKind::async_teledata:
            return "async-teledata";
        case ProtocolKind::async_telegate:
            return "async-telegate";
    }
    return "?";
}

ProtocolKind protocol_from_string(std::string_view name) {
    if (name == "sync-teledata" || name == "teledata") {
        return ProtocolKind::sync_teledata;
    }
    if (name == "sync-telegate" || name == "telegate") {
        return ProtocolKind::sync_telegate;
    }
    if (name == "async-teledata") {
        return ProtocolKind::async_teledata;
    }
    if (name == "async-telegate") {
        return ProtocolKind::async_telegate;
    }
    throw Error(ErrorKind::UnknownProtocol, "unknown protocol '" + std::string(name) + "'");
}

namespace {

nlohmann::json qubit_json(const QubitState &s) {
    return nlohmann::json::array({complex_to_json(s.alpha), complex_to_json(s.beta)});
}

bool uses_phi(ProtocolKind kind) {
    return kind == ProtocolKind::sync_telegate || kind == ProtocolKind::async_telegate;
}

bool uses_u(ProtocolKind kind) {
    return kind == ProtocolKind::async_teledata || kind == ProtocolKind::async_telegate;
}

}  // namespace

nlohmann::json to_json(const ProtocolInputs &inputs) {
    nlohmann::json j = {{"protocol", to_string(inputs.kind)}, {"psi", qubit_json(inputs.psi)}};
    if (uses_phi(inputs.kind)) {
        j["phi"] = qubit_json(inputs.phi);
    }
    if (uses_u(inputs.kind)) {
        j["u"] = matrix2_to_json(inputs.u.as_matrix2());
    }
    return j;
}

ProtocolCircuit build_protocol(const ProtocolInputs &inputs) {
    switch (inputs.kind) {
        case ProtocolKind::sync_teledata:
            return build_teledata(inputs.psi);
        case ProtocolKind::sync_telegate:
            return build_telegate(inputs.psi, inputs.phi);
        case ProtocolKind::async_teledata:
            return build_async_teledata(inputs.psi, inputs.u, inputs.z_correction);
        case ProtocolKind::async_telegate:
            return build_async_telegate(inputs.psi, inputs.phi, inputs.u, inputs.x_correction);
    }
    throw Error(ErrorKind::UnknownProtocol, "unhandled protocol kind");
}

StateVector oracle_sync_teledata(const QubitState &psi) {
    psi.validate();
    return StateVector::from_amplitudes({psi.alpha, 0.0, 0.0, psi.beta});
}

StateVector oracle_sync_telegate(const QubitState &psi, const QubitState &phi) {
    psi.validate();
    phi.validate();
    // alpha|0>(gamma|0> + delta|1>) + beta|1>(delta|0> + gamma|1>)
    return StateVector::from_amplitudes(
        {psi.alpha * phi.alpha, psi.alpha * phi.beta, psi.beta * phi.beta, psi.beta * phi.alpha});
}

StateVector oracle_async_teledata(const QubitState &psi, const Operator &u) {
    psi.validate();
    if (u.arity() != 1 || !u.is_unitary()) {
        throw Error(ErrorKind::NotUnitary, "U must be a single-qubit unitary");
    }
    // U|0> is column 0, U|1> is column 1.
    return StateVector::from_amplitudes(
        {psi.alpha * u.at(0, 0), psi.alpha * u.at(1, 0), psi.beta * u.at(0, 1), psi.beta * u.at(1, 1)});
}

StateVector oracle_async_telegate(const QubitState &psi, const QubitState &phi, const Operator &u) {
    psi.validate();
    phi.validate();
    if (u.arity() != 1 || !u.is_unitary()) {
        throw Error(ErrorKind::NotUnitary, "U must be a single-qubit unitary");
    }
    // Copy state c0|0>U|0> + c1|1>U|1> over (B0, B1), indexed [b0][b1].
    auto copy = [&](Complex c0, Complex c1) {
        return std::array<Complex, 4>{c0 * u.at(0, 0), c0 * u.at(1, 0), c1 * u.at(0, 1), c1 * u.at(1, 1)};
    };
    auto plain = copy(phi.alpha, phi.beta);
    auto flipped = copy(phi.beta, phi.alpha);
    std::vector<Complex> amps(8);
    for (std::size_t i = 0; i < 4; ++i) {
        amps[i] = psi.alpha * plain[i];
        amps[4 + i] = psi.beta * flipped[i];
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector oracle_async_telegate_by_gates(const QubitState &psi, const QubitState &phi, const Operator &u) {
    StateVector s = tensor(tensor(psi.to_state(), phi.to_state()), StateVector::basis(1, 0));
    s.apply(gates::cnot(), {0, 1});
    s.apply(gates::cnot(), {1, 2});
    s.apply(u, {2});
    return s;
}

StateVector oracle_for(const ProtocolInputs &inputs) {
    switch (inputs.kind) {
        case ProtocolKind::sync_teledata:
            return oracle_sync_teledata(inputs.psi);
        case ProtocolKind::sync_telegate:
            return oracle_sync_telegate(inputs.psi, inputs.phi);
        case ProtocolKind::async_teledata:
            return oracle_async_teledata(inputs.psi, inputs.u);
        case ProtocolKind::async_telegate:
            return oracle_async_telegate(inputs.psi, inputs.phi, inputs.u);
    }
    throw Error(ErrorKind::UnknownProtocol, "unhandled protocol kind");
}

QubitState haar_qubit(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    while (true) {
        Complex a(normal(rng), normal(rng));
        Complex b(normal(rng), normal(rng));
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-9) {
            return {a / n, b / n};
        }
    }
}

QubitState haar_qubit_nondegenerate(Rng &rng, double min_amplitude) {
    while (true) {
        QubitState s = haar_qubit(rng);
        if (std::min(std::abs(s.alpha), std::abs(s.beta)) >= min_amplitude) {
            return s;
        }
    }
}

Operator haar_unitary(Rng &rng) {
    // e^{i phase} [[a, -b*], [b, a*]] with (a, b) uniform on the unit 3-sphere is Haar on U(2).
    QubitState col = haar_qubit(rng);
    double phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    Complex g = std::polar(1.0, phase);
    return Operator::single("u", {g * col.alpha, -g * std::conj(col.beta), g * col.beta, g * std::conj(col.alpha)});
}

nlohmann::json to_json(const VerificationReport &report) {
    auto bits = [](const std::vector<int> &outcome) {
        std::string s;
        for (int b : outcome) {
            s.push_back(b ? '1' : '0');
        }
        return s;
    };
    nlohmann::json results = nlohmann::json::array();
    for (const auto &r : report.results) {
        results.push_back({{"trial", r.trial}, {"outcome", bits(r.outcome)}, {"fidelity", r.fidelity}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto &f : report.failures) {
        failures.push_back(
            {{"trial", f.trial}, {"outcome", bits(f.outcome)}, {"fidelity", f.fidelity}, {"inputs", f.inputs}});
    }
    nlohmann::json j = {{"protocol", report.protocol},
                        {"trials", report.trials},
                        {"seed", report.seed},
                        {"threshold", report.threshold},
                        {"min_fidelity", nullptr},
                        {"passed", report.passed()},
                        {"failures", std::move(failures)},
                        {"results", std::move(results)},
                        {"error", nullptr}};
    if (report.min_fidelity) {
        j["min_fidelity"] = *report.min_fidelity;
    }
    if (report.error) {
        j["error"] = *report.error;
    }
    return j;
}

namespace {

struct TrialResult {
    std::vector<OutcomeFidelity> results;
    std::vector<TrialFailure> failures;
    std::optional<std::string> error;
};

TrialResult run_trial(const ProtocolInputs &inputs, std::size_t trial, double threshold) {
    TrialResult out;
    std::optional<ProtocolCircuit> built;
    try {
        built.emplace(build_protocol(inputs));
    } catch (const Error &e) {
        out.error = e.what();
        return out;
    }
    const StateVector oracle = oracle_for(inputs);
    const std::size_t m = built->circuit.measurement_count();
    for (std::size_t combo = 0; combo < (std::size_t{1} << m); ++combo) {
        std::vector<int> forced(m);
        for (std::size_t i = 0; i < m; ++i) {
            forced[i] = static_cast<int>((combo >> (m - 1 - i)) & 1U);
        }
        RunResult run = run_circuit(built->circuit, forced);
        StateVector final_state = extract_subsystem(run.state, built->output_qubits);
        double f = fidelity_up_to_phase(final_state, oracle);
        out.results.push_back({trial, forced, f});
        if (f < threshold) {
            out.failures.push_back({trial, forced, f, to_json(inputs)});
        }
    }
    return out;
}

void finalize(VerificationReport &report) {
    for (const auto &r : report.results) {
        report.min_fidelity = report.min_fidelity ? std::min(*report.min_fidelity, r.fidelity) : r.fidelity;
    }
}

}  // namespace

VerificationReport exhaustive_outcome_suite(const ProtocolInputs &inputs, double threshold) {
    VerificationReport report;
    report.protocol = std::string(to_string(inputs.kind));
    report.threshold = threshold;
    TrialResult t = run_trial(inputs, 0, threshold);
    if (t.error) {
        report.error = t.error;
        return report;
    }
    report.trials = 1;
    report.results = std::move(t.results);
    report.failures = std::move(t.failures);
    finalize(report);
    return report;
}

VerificationReport randomized_suite(std::string_view protocol, std::size_t trials, std::uint64_t seed,
                                    double threshold, const SuiteOptions &options) {
    const ProtocolKind kind = protocol_from_string(protocol);
    if (trials == 0) {
        throw Error(ErrorKind::InvalidConfig, "trials must be at least 1");
    }

    std::vector<TrialResult> per_trial(trials);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
            Rng rng(seq);
            ProtocolInputs inputs;
            inputs.kind = kind;
            inputs.z_correction = options.z_correction;
            inputs.x_correction = options.x_correction;
            inputs.psi = haar_qubit_nondegenerate(rng);
            inputs.phi = haar_qubit_nondegenerate(rng);
            inputs.u = haar_unitary(rng);
            try {
                per_trial[i] = run_trial(inputs, i, threshold);
            } catch (const Error &e) {
                per_trial[i].error = e.what();
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
    std::vector<std::jthread> pool;
    std::size_t chunk = (trials + threads - 1) / threads;
    for (std::size_t begin = 0; begin < trials; begin += chunk) {
        pool.emplace_back(work, begin, std::min(trials, begin + chunk));
    }
    pool.clear();

    VerificationReport report;
    report.protocol = std::string(to_string(kind));
    report.trials = trials;
    report.seed = seed;
    report.threshold = threshold;
    for (auto &t : per_trial) {
        if (t.error && !report.error) {
            report.error = t.error;
        }
        std::move(t.results.begin(), t.results.end(), std::back_inserter(report.results));
        std::move(t.failures.begin(), t.failures.end(), std::back_inserter(report.failures));
    }
    finalize(report);
    return report;
}

}  // namespace dqc
