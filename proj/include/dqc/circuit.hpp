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
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dqc/operator.hpp"
#include "dqc/state_vector.hpp"
#include "json.hpp"

namespace dqc {

enum class GateKind {
    h,
    x,
    z,
    cnot,
    /// Arbitrary single-qubit matrix payload.
    u,
    /// Nonunitary amplitude-ratio correction built from (alpha, beta).
    f,
    /// Nonunitary Z replacement built from a single-qubit payload.
    g,
    /// U^-1, Z, U applied in that order (net U Z U^-1).
    uzu_inv,
    /// U^-1, X, U applied in that order (net U X U^-1).
    uxu_inv,
};

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

/// A named gate with the payload needed to rebuild its operator(s).
struct GateSpec {
    GateKind kind = GateKind::x;
    Matrix2 u{};
    Complex alpha{};
    Complex beta{};

    static GateSpec simple(GateKind kind);
    static GateSpec unitary(const Operator &u);
    static GateSpec f(Complex alpha, Complex beta);
    static GateSpec g(const Operator &u);
    static GateSpec uzu_inv(const Operator &u);
    static GateSpec uxu_inv(const Operator &u);

    std::size_t arity() const;
    /// Operators in application order.
    std::vector<Operator> operators() const;
};

enum class Register { cA, cB };

struct ClassicalBit {
    Register reg = Register::cA;
    std::size_t index = 0;

    std::string name() const;
    static ClassicalBit parse(std::string_view name);
    auto operator<=>(const ClassicalBit &) const = default;
};

struct GateInstruction {
    GateSpec gate;
    std::vector<std::size_t> targets;
};

struct MeasureInstruction {
    std::size_t qubit;
    ClassicalBit cbit;
};

struct ConditionalInstruction {
    GateSpec gate;
    std::vector<std::size_t> targets;
    ClassicalBit cbit;
    int value = 1;
};

struct BarrierInstruction {
    std::string label;
};

using Instruction = std::variant<GateInstruction, MeasureInstruction, ConditionalInstruction, BarrierInstruction>;

/// Ordered instruction list over `num_qubits` qubits and the classical registers cA, cB.
/// Append operations validate that every qubit and bit is declared and that a
/// conditional gate only reads a bit some earlier measurement wrote.
class Circuit {
   public:
    Circuit(std::size_t num_qubits, std::size_t ca_bits, std::size_t cb_bits);

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    std::size_t register_size(Register reg) const noexcept {
        return reg == Register::cA ? ca_bits_ : cb_bits_;
    }
    const std::vector<Instruction> &instructions() const noexcept {
        return instructions_;
    }
    std::size_t measurement_count() const;

    Circuit &gate(GateSpec gate, std::vector<std::size_t> targets);
    Circuit &gate(GateKind kind, std::vector<std::size_t> targets) {
        return gate(GateSpec::simple(kind), std::move(targets));
    }
    Circuit &measure(std::size_t qubit, ClassicalBit cbit);
    Circuit &conditional(GateSpec gate, std::vector<std::size_t> targets, ClassicalBit cbit, int value = 1);
    Circuit &barrier(std::string label);

    /// Labels of all section barriers, in order.
    std::vector<std::string> section_labels() const;

   private:
    void check_targets(const GateSpec &gate, const std::vector<std::size_t> &targets) const;
    void check_bit(const ClassicalBit &cbit) const;

    std::size_t num_qubits_;
    std::size_t ca_bits_;
    std::size_t cb_bits_;
    std::vector<Instruction> instructions_;
    std::vector<ClassicalBit> written_;
};

struct RunResult {
    StateVector state;
    /// Measurement outcomes in instruction order.
    std::vector<int> outcomes;
    std::map<ClassicalBit, int> bits;
};

/// Executes from |0...0>, forcing the i-th measurement to `forced[i]`.
RunResult run_circuit(const Circuit &circuit, std::span<const int> forced);

/// Executes from |0...0>, sampling measurements from `rng`.
RunResult run_circuit(const Circuit &circuit, std::mt19937_64 &rng);

/// Executes the instructions of `circuit` from an arbitrary start state.
RunResult run_circuit_from(const Circuit &circuit, StateVector initial, std::span<const int> forced);

nlohmann::json to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &j);

}  // namespace dqc
