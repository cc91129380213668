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

#include "dqc/circuit.hpp"

#include <algorithm>
#include <cctype>

#include "dqc/error.hpp"
#include "dqc/protocols.hpp"

namespace dqc {

namespace {

constexpr std::pair<GateKind, std::string_view> kGateNames[] = {
    {GateKind::h, "h"},       {GateKind::x, "x"},
    {GateKind::z, "z"},       {GateKind::cnot, "cnot"},
    {GateKind::u, "u"},       {GateKind::f, "f"},
    {GateKind::g, "g"},       {GateKind::uzu_inv, "uzu_inv"},
    {GateKind::uxu_inv, "uxu_inv"},
};

Operator payload_operator(const Matrix2 &m) {
    Operator op = Operator::single("u", m);
    if (!op.is_unitary()) {
        throw Error(ErrorKind::NotUnitary, "gate payload U is not unitary");
    }
    return op;
}

}  // namespace

std::string_view to_string(GateKind kind) {
    for (const auto &[k, name] : kGateNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const auto &[k, n] : kGateNames) {
        if (n == lower) {
            return k;
        }
    }
    throw Error(ErrorKind::InvalidCircuit, "unknown gate '" + std::string(name) + "'");
}

GateSpec GateSpec::simple(GateKind kind) {
    if (kind != GateKind::h && kind != GateKind::x && kind != GateKind::z && kind != GateKind::cnot) {
        throw Error(ErrorKind::InvalidCircuit, "gate '" + std::string(to_string(kind)) + "' needs a payload");
    }
    GateSpec g;
    g.kind = kind;
    return g;
}

GateSpec GateSpec::unitary(const Operator &u) {
    GateSpec g;
    g.kind = GateKind::u;
    g.u = u.as_matrix2();
    return g;
}

GateSpec GateSpec::f(Complex alpha, Complex beta) {
    GateSpec g;
    g.kind = GateKind::f;
    g.alpha = alpha;
    g.beta = beta;
    return g;
}

GateSpec GateSpec::g(const Operator &u) {
    GateSpec g;
    g.kind = GateKind::g;
    g.u = u.as_matrix2();
    return g;
}

GateSpec GateSpec::uzu_inv(const Operator &u) {
    GateSpec g;
    g.kind = GateKind::uzu_inv;
    g.u = u.as_matrix2();
    return g;
}

GateSpec GateSpec::uxu_inv(const Operator &u) {
    GateSpec g;
    g.kind = GateKind::uxu_inv;
    g.u = u.as_matrix2();
    return g;
}

std::size_t GateSpec::arity() const {
    switch (kind) {
        case GateKind::cnot:
        case GateKind::f:
        case GateKind::g:
            return 2;
        default:
            return 1;
    }
}

std::vector<Operator> GateSpec::operators() const {
    switch (kind) {
        case GateKind::h:
            return {gates::hadamard()};
        case GateKind::x:
            return {gates::pauli_x()};
        case GateKind::z:
            return {gates::pauli_z()};
        case GateKind::cnot:
            return {gates::cnot()};
        case GateKind::u:
            return {Operator::single("u", u)};
        case GateKind::f:
            return {make_F(alpha, beta)};
        case GateKind::g:
            return {make_G(payload_operator(u)).op};
        case GateKind::uzu_inv: {
            Operator op = payload_operator(u);
            return {op.adjoint(), gates::pauli_z(), op};
        }
        case GateKind::uxu_inv: {
            Operator op = payload_operator(u);
            return {op.adjoint(), gates::pauli_x(), op};
        }
    }
    throw Error(ErrorKind::InvalidCircuit, "unhandled gate kind");
}

std::string ClassicalBit::name() const {
    return std::string(reg == Register::cA ? "cA." : "cB.") + std::to_string(index);
}

ClassicalBit ClassicalBit::parse(std::string_view name) {
    if (name.size() < 4 || name[0] != 'c' || (name[1] != 'A' && name[1] != 'B') || name[2] != '.') {
        throw Error(ErrorKind::InvalidCircuit, "classical bit must look like cA.0 or cB.1, got '" +
                                                   std::string(name) + "'");
    }
    ClassicalBit b;
    b.reg = name[1] == 'A' ? Register::cA : Register::cB;
    try {
        b.index = std::stoul(std::string(name.substr(3)));
    } catch (const std::exception &) {
        throw Error(ErrorKind::InvalidCircuit, "bad classical bit index in '" + std::string(name) + "'");
    }
    return b;
}

Circuit::Circuit(std::size_t num_qubits, std::size_t ca_bits, std::size_t cb_bits)
    : num_qubits_(num_qubits), ca_bits_(ca_bits), cb_bits_(cb_bits) {
    if (num_qubits == 0) {
        throw Error(ErrorKind::InvalidCircuit, "circuit needs at least one qubit");
    }
}

std::size_t Circuit::measurement_count() const {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(), [](const auto &ins) {
        return std::holds_alternative<MeasureInstruction>(ins);
    }));
}

void Circuit::check_targets(const GateSpec &gate, const std::vector<std::size_t> &targets) const {
    if (targets.size() != gate.arity()) {
        throw Error(ErrorKind::InvalidTargets, "gate '" + std::string(to_string(gate.kind)) + "' takes " +
                                                   std::to_string(gate.arity()) + " targets");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= num_qubits_) {
            throw Error(ErrorKind::InvalidTargets, "qubit " + std::to_string(targets[i]) + " not declared");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw Error(ErrorKind::InvalidTargets, "duplicate target " + std::to_string(targets[i]));
            }
        }
    }
}

void Circuit::check_bit(const ClassicalBit &cbit) const {
    if (cbit.index >= register_size(cbit.reg)) {
        throw Error(ErrorKind::InvalidCircuit, "classical bit " + cbit.name() + " not declared");
    }
}

Circuit &Circuit::gate(GateSpec gate, std::vector<std::size_t> targets) {
    check_targets(gate, targets);
    instructions_.emplace_back(GateInstruction{gate, std::move(targets)});
    return *this;
}

Circuit &Circuit::measure(std::size_t qubit, ClassicalBit cbit) {
    if (qubit >= num_qubits_) {
        throw Error(ErrorKind::InvalidTargets, "qubit " + std::to_string(qubit) + " not declared");
    }
    check_bit(cbit);
    instructions_.emplace_back(MeasureInstruction{qubit, cbit});
    written_.push_back(cbit);
    return *this;
}

Circuit &Circuit::conditional(GateSpec gate, std::vector<std::size_t> targets, ClassicalBit cbit, int value) {
    check_targets(gate, targets);
    check_bit(cbit);
    if (std::find(written_.begin(), written_.end(), cbit) == written_.end()) {
        throw Error(ErrorKind::InvalidCircuit, "conditional reads " + cbit.name() + " before it is measured");
    }
    if (value != 0 && value != 1) {
        throw Error(ErrorKind::InvalidCircuit, "condition value must be 0 or 1");
    }
    instructions_.emplace_back(ConditionalInstruction{gate, std::move(targets), cbit, value});
    return *this;
}

Circuit &Circuit::barrier(std::string label) {
    instructions_.emplace_back(BarrierInstruction{std::move(label)});
    return *this;
}

std::vector<std::string> Circuit::section_labels() const {
    std::vector<std::string> out;
    for (const auto &ins : instructions_) {
        if (const auto *b = std::get_if<BarrierInstruction>(&ins)) {
            out.push_back(b->label);
        }
    }
    return out;
}

namespace {

void apply_spec(StateVector &state, const GateSpec &gate, const std::vector<std::size_t> &targets) {
    for (const auto &op : gate.operators()) {
        state.apply(op, targets, Renormalize::yes);
    }
}

template <typename Measure>
RunResult execute(const Circuit &circuit, StateVector state, Measure &&measure) {
    if (state.num_qubits() != circuit.num_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "initial state width does not match circuit");
    }
    std::vector<int> outcomes;
    std::map<ClassicalBit, int> bits;
    for (const auto &ins : circuit.instructions()) {
        if (const auto *g = std::get_if<GateInstruction>(&ins)) {
            apply_spec(state, g->gate, g->targets);
        } else if (const auto *m = std::get_if<MeasureInstruction>(&ins)) {
            int bit = measure(state, m->qubit, outcomes.size());
            outcomes.push_back(bit);
            bits[m->cbit] = bit;
        } else if (const auto *c = std::get_if<ConditionalInstruction>(&ins)) {
            if (bits.at(c->cbit) == c->value) {
                apply_spec(state, c->gate, c->targets);
            }
        }
    }
    return RunResult{std::move(state), std::move(outcomes), std::move(bits)};
}

}  // namespace

RunResult run_circuit_from(const Circuit &circuit, StateVector initial, std::span<const int> forced) {
    if (forced.size() != circuit.measurement_count()) {
        throw Error(ErrorKind::InvalidCircuit, "expected " + std::to_string(circuit.measurement_count()) +
                                                   " forced outcomes, got " + std::to_string(forced.size()));
    }
    return execute(circuit, std::move(initial), [&](StateVector &s, std::size_t qubit, std::size_t i) {
        return s.measure_forced(qubit, forced[i]).bit;
    });
}

RunResult run_circuit(const Circuit &circuit, std::span<const int> forced) {
    return run_circuit_from(circuit, StateVector::basis(circuit.num_qubits(), 0), forced);
}

RunResult run_circuit(const Circuit &circuit, std::mt19937_64 &rng) {
    return execute(circuit, StateVector::basis(circuit.num_qubits(), 0),
                   [&](StateVector &s, std::size_t qubit, std::size_t) { return s.measure(qubit, rng).bit; });
}

namespace {

nlohmann::json gate_payload(nlohmann::json j, const GateSpec &gate) {
    switch (gate.kind) {
        case GateKind::u:
            j["matrix"] = matrix2_to_json(gate.u);
            break;
        case GateKind::f:
            j["alpha"] = complex_to_json(gate.alpha);
            j["beta"] = complex_to_json(gate.beta);
            break;
        case GateKind::g:
        case GateKind::uzu_inv:
        case GateKind::uxu_inv:
            j["u"] = matrix2_to_json(gate.u);
            break;
        default:
            break;
    }
    return j;
}

GateSpec read_gate(GateKind kind, const nlohmann::json &j) {
    GateSpec g;
    g.kind = kind;
    switch (kind) {
        case GateKind::u:
            g.u = matrix2_from_json(j.at("matrix"));
            break;
        case GateKind::f:
            g.alpha = complex_from_json(j.at("alpha"));
            g.beta = complex_from_json(j.at("beta"));
            break;
        case GateKind::g:
        case GateKind::uzu_inv:
        case GateKind::uxu_inv:
            g.u = matrix2_from_json(j.at("u"));
            break;
        default:
            break;
    }
    return g;
}

}  // namespace

nlohmann::json to_json(const Circuit &circuit) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &ins : circuit.instructions()) {
        if (const auto *g = std::get_if<GateInstruction>(&ins)) {
            list.push_back(gate_payload({{"op", to_string(g->gate.kind)}, {"targets", g->targets}}, g->gate));
        } else if (const auto *m = std::get_if<MeasureInstruction>(&ins)) {
            list.push_back({{"op", "measure"}, {"qubit", m->qubit}, {"cbit", m->cbit.name()}});
        } else if (const auto *c = std::get_if<ConditionalInstruction>(&ins)) {
            list.push_back(gate_payload({{"op", "cond"},
                                         {"gate", to_string(c->gate.kind)},
                                         {"targets", c->targets},
                                         {"cbit", c->cbit.name()},
                                         {"value", c->value}},
                                        c->gate));
        } else if (const auto *b = std::get_if<BarrierInstruction>(&ins)) {
            list.push_back({{"op", "barrier"}, {"label", b->label}});
        }
    }
    return {{"num_qubits", circuit.num_qubits()},
            {"classical_bits", {{"cA", circuit.register_size(Register::cA)}, {"cB", circuit.register_size(Register::cB)}}},
            {"instructions", std::move(list)}};
}

Circuit circuit_from_json(const nlohmann::json &j) {
    try {
        Circuit c(j.at("num_qubits").get<std::size_t>(), j.at("classical_bits").at("cA").get<std::size_t>(),
                  j.at("classical_bits").at("cB").get<std::size_t>());
        for (const auto &ins : j.at("instructions")) {
            auto op = ins.at("op").get<std::string>();
            if (op == "measure") {
                c.measure(ins.at("qubit").get<std::size_t>(), ClassicalBit::parse(ins.at("cbit").get<std::string>()));
            } else if (op == "cond") {
                GateKind kind = gate_kind_from_string(ins.at("gate").get<std::string>());
                c.conditional(read_gate(kind, ins), ins.at("targets").get<std::vector<std::size_t>>(),
                              ClassicalBit::parse(ins.at("cbit").get<std::string>()), ins.value("value", 1));
            } else if (op == "barrier") {
                c.barrier(ins.at("label").get<std::string>());
            } else {
                GateKind kind = gate_kind_from_string(op);
                c.gate(read_gate(kind, ins), ins.at("targets").get<std::vector<std::size_t>>());
            }
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidCircuit, e.what());
    }
}

}  // namespace dqc
