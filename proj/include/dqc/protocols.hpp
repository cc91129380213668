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
#include <optional>
#include <string>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/operator.hpp"
#include "dqc/state_vector.hpp"

namespace dqc {

/// Amplitude below which alpha or beta is treated as zero when forming a ratio.
inline constexpr double kDegenerateAmplitude = 1e-12;

/// alpha|0> + beta|1>.
struct QubitState {
    Complex alpha{1.0};
    Complex beta{0.0};

    /// Throws NotNormalized unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    void validate() const;
    StateVector to_state() const;
    /// Unitary taking |0> to this state.
    Operator preparation() const;
};

enum class Role { a, photon_a, photon_b, b, b0, b1 };

std::string_view to_string(Role role);

/// Qubit index -> role, plus the classical description of the inputs that the
/// nonunitary corrections consume.
struct ProtocolLayout {
    std::vector<Role> roles;
    QubitState psi;
    std::optional<QubitState> phi;

    std::size_t qubit(Role role) const;
};

struct ProtocolCircuit {
    Circuit circuit;
    ProtocolLayout layout;
    /// Qubits holding the protocol's result, in the order the reference state uses.
    std::vector<std::size_t> output_qubits;
};

/// How the async teledata protocol undoes the Z branch.
enum class ZCorrection {
    /// U^-1, Z, U on B.
    conjugated,
    /// The G operator on (photon_B, B).
    g_operator,
};

/// How the async telegate protocol undoes the X branch (cA = 1).
enum class XCorrection {
    /// X on B0, then U^-1, X, U on B1.
    conjugated,
    /// F(gamma, delta) on (B0, B1) sandwiched between CNot(A -> B0); scales by the
    /// parity of A and B0 using phi's amplitudes.
    f_parity,
    /// F(alpha, beta) on (B0, B1). Leaves A entangled with the wrong branch and is
    /// kept only to demonstrate that failure.
    literal_f,
};

/// Appends H(q0), CNot(q0 -> q1).
void bell_prep(Circuit &circuit, std::size_t q0, std::size_t q1);

/// Qubits (A, photon_A, photon_B, B). Outputs (photon_B, B) = alpha|00> + beta|11>.
ProtocolCircuit build_teledata(const QubitState &psi);

/// Qubits (A, photon_A, photon_B, B). Outputs (A, B) = CNot(A -> B) (psi (x) phi).
ProtocolCircuit build_telegate(const QubitState &psi, const QubitState &phi);

/// diag(alpha/beta, alpha/beta, beta/alpha, beta/alpha).
/// Throws DegenerateAmplitude if min(|alpha|, |beta|) < 1e-12.
Operator make_F(Complex alpha, Complex beta);

struct GOperator {
    Operator op;
    /// A ratio had a vanishing denominator and diag(1, 1, -1, -1) was substituted.
    bool used_fallback = false;
    /// The operator equals diag(1, 1, -1, -1), i.e. carries no dependence on U.
    bool u_independent = false;
    std::string diagnostic;
};

/// diag(1, 1, U1+_a / U1-_a, U1+_b / U1-_b) where U1+ = U|1> and U1- = U(-|1>).
GOperator make_G(const Operator &u);

/// diag(1, 1, -1, -1): the value every nondegenerate ratio above reduces to.
Operator g_linear_fallback();

/// [U^-1, Z, U] in application order. Throws NotUnitary for a nonunitary U.
std::vector<Operator> correction_z_conjugated(const Operator &u);

/// Qubits (A, photon_A, photon_B, B). Outputs (photon_B, B) = alpha|0>U|0> + beta|1>U|1>.
/// Throws DegenerateAmplitude when psi has a vanishing amplitude.
ProtocolCircuit build_async_teledata(const QubitState &psi, const Operator &u,
                                     ZCorrection z_correction = ZCorrection::conjugated);

/// Qubits (A, photon_A, photon_B, B0, B1), B1 starting in |0>. Outputs (A, B0, B1) =
/// alpha|0>|phi>U|phi> + beta|1>|phi~>U|phi~> (CNot(B0 -> B1) copies, then U on B1).
ProtocolCircuit build_async_telegate(const QubitState &psi, const QubitState &phi, const Operator &u,
                                     XCorrection x_correction = XCorrection::conjugated);

}  // namespace dqc
