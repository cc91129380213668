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

#include "dqc/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "dqc/error.hpp"

namespace dqc {

namespace {

constexpr ClassicalBit kCA0{Register::cA, 0};
constexpr ClassicalBit kCA1{Register::cA, 1};
constexpr ClassicalBit kCB0{Register::cB, 0};

void require_unitary(const Operator &u) {
    if (u.arity() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "U must be a single-qubit operator");
    }
    if (!u.is_unitary()) {
        throw Error(ErrorKind::NotUnitary, "U must be unitary");
    }
}

void require_nondegenerate(const QubitState &s, const char *what) {
    if (std::min(std::abs(s.alpha), std::abs(s.beta)) < kDegenerateAmplitude) {
        throw Error(ErrorKind::DegenerateAmplitude, std::string(what) + " has a vanishing amplitude");
    }
}

}  // namespace

void QubitState::validate() const {
    double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized, "|alpha|^2 + |beta|^2 = " + std::to_string(n));
    }
}

StateVector QubitState::to_state() const {
    validate();
    return StateVector::from_amplitudes({alpha, beta});
}

Operator QubitState::preparation() const {
    validate();
    return Operator::single("prep", {alpha, -std::conj(beta), beta, std::conj(alpha)});
}

std::string_view to_string(Role role) {
    switch (role) {
        case Role::a:
            return "A";
        case Role::photon_a:
            return "photon_A";
        case Role::photon_b:
            return "photon_B";
        case Role::b:
            return "B";
        case Role::b0:
            return "B0";
        case Role::b1:
            return "B1";
    }
    return "?";
}

std::size_t ProtocolLayout::qubit(Role role) const {
    auto it = std::find(roles.begin(), roles.end(), role);
    if (it == roles.end()) {
        throw Error(ErrorKind::UnknownQubit, "layout has no " + std::string(to_string(role)) + " qubit");
    }
    return static_cast<std::size_t>(it - roles.begin());
}

void bell_prep(Circuit &circuit, std::size_t q0, std::size_t q1) {
    if (q0 == q1) {
        throw Error(ErrorKind::InvalidTargets, "Bell pair needs two distinct qubits");
    }
    circuit.gate(GateKind::h, {q0});
    circuit.gate(GateKind::cnot, {q0, q1});
}

ProtocolCircuit build_teledata(const QubitState &psi) {
    psi.validate();
    constexpr std::size_t a = 0, pa = 1, pb = 2, b = 3;
    Circuit c(4, 2, 0);
    c.barrier("prep").gate(GateSpec::unitary(psi.preparation()), {a});
    c.barrier("section-1");
    bell_prep(c, pa, pb);
    c.barrier("section-2").gate(GateKind::cnot, {a, pa}).gate(GateKind::h, {a});
    c.barrier("section-3").measure(a, kCA0).measure(pa, kCA1);
    c.barrier("section-4")
        .conditional(GateSpec::simple(GateKind::x), {pb}, kCA1)
        .conditional(GateSpec::simple(GateKind::z), {pb}, kCA0)
        .gate(GateKind::cnot, {pb, b});
    return {std::move(c), {{Role::a, Role::photon_a, Role::photon_b, Role::b}, psi, std::nullopt}, {pb, b}};
}

ProtocolCircuit build_telegate(const QubitState &psi, const QubitState &phi) {
    psi.validate();
    phi.validate();
    constexpr std::size_t a = 0, pa = 1, pb = 2, b = 3;
    Circuit c(4, 1, 1);
    c.barrier("prep").gate(GateSpec::unitary(psi.preparation()), {a}).gate(GateSpec::unitary(phi.preparation()), {b});
    c.barrier("section-1");
    bell_prep(c, pa, pb);
    c.barrier("section-2")
        .gate(GateKind::cnot, {a, pa})
        .measure(pa, kCA0)
        .gate(GateKind::cnot, {pb, b})
        .gate(GateKind::h, {pb})
        .measure(pb, kCB0);
    c.barrier("section-3")
        .conditional(GateSpec::simple(GateKind::x), {b}, kCA0)
        .conditional(GateSpec::simple(GateKind::z), {a}, kCB0);
    return {std::move(c), {{Role::a, Role::photon_a, Role::photon_b, Role::b}, psi, phi}, {a, b}};
}

Operator make_F(Complex alpha, Complex beta) {
    if (std::min(std::abs(alpha), std::abs(beta)) < kDegenerateAmplitude) {
        throw Error(ErrorKind::DegenerateAmplitude, "F needs nonzero alpha and beta");
    }
    Complex r = alpha / beta;
    Complex q = beta / alpha;
    return Operator("f", 2, {r, 0, 0, 0, 0, r, 0, 0, 0, 0, q, 0, 0, 0, 0, q});
}

Operator g_linear_fallback() {
    return Operator("g", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1});
}

GOperator make_G(const Operator &u) {
    require_unitary(u);
    // U applied to +|1> and -|1>: the second column and its negation.
    const Complex plus_alpha = u.at(0, 1);
    const Complex plus_beta = u.at(1, 1);
    const Complex minus_alpha = -plus_alpha;
    const Complex minus_beta = -plus_beta;

    GOperator out{g_linear_fallback(), false, false, {}};
    if (std::abs(minus_alpha) < kDegenerateAmplitude || std::abs(minus_beta) < kDegenerateAmplitude) {
        out.used_fallback = true;
        out.diagnostic = std::string(to_string(ErrorKind::GDenominatorZero)) +
                         ": U|1> has a zero component; substituted diag(1, 1, -1, -1)";
    } else {
        Complex ra = plus_alpha / minus_alpha;
        Complex rb = plus_beta / minus_beta;
        out.op = Operator("g", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, ra, 0, 0, 0, 0, rb});
    }
    out.u_independent = out.op.approx_equal(g_linear_fallback(), 1e-12);
    return out;
}

std::vector<Operator> correction_z_conjugated(const Operator &u) {
    require_unitary(u);
    return {u.adjoint(), gates::pauli_z(), u};
}

ProtocolCircuit build_async_teledata(const QubitState &psi, const Operator &u, ZCorrection z_correction) {
    psi.validate();
    require_unitary(u);
    require_nondegenerate(psi, "psi");
    constexpr std::size_t a = 0, pa = 1, pb = 2, b = 3;
    Circuit c(4, 2, 0);
    c.barrier("prep").gate(GateSpec::unitary(psi.preparation()), {a});
    c.barrier("section-1");
    bell_prep(c, pa, pb);
    c.barrier("section-2").gate(GateKind::cnot, {a, pa}).gate(GateKind::h, {a});
    c.barrier("section-3").gate(GateKind::cnot, {pb, b}).gate(GateSpec::unitary(u), {b});
    c.barrier("section-4").measure(a, kCA0).measure(pa, kCA1);
    // X branch first, then Z, as in the synchronous protocol.
    c.conditional(GateSpec::f(psi.alpha, psi.beta), {pb, b}, kCA1);
    if (z_correction == ZCorrection::conjugated) {
        c.conditional(GateSpec::uzu_inv(u), {b}, kCA0);
    } else {
        c.conditional(GateSpec::g(u), {pb, b}, kCA0);
    }
    return {std::move(c), {{Role::a, Role::photon_a, Role::photon_b, Role::b}, psi, std::nullopt}, {pb, b}};
}

ProtocolCircuit build_async_telegate(const QubitState &psi, const QubitState &phi, const Operator &u,
                                     XCorrection x_correction) {
    psi.validate();
    phi.validate();
    require_unitary(u);
    if (x_correction == XCorrection::literal_f) {
        require_nondegenerate(psi, "psi");
    } else if (x_correction == XCorrection::f_parity) {
        require_nondegenerate(phi, "phi");
    }
    constexpr std::size_t a = 0, pa = 1, pb = 2, b0 = 3, b1 = 4;
    Circuit c(5, 1, 1);
    c.barrier("prep").gate(GateSpec::unitary(psi.preparation()), {a}).gate(GateSpec::unitary(phi.preparation()), {b0});
    c.barrier("section-1");
    bell_prep(c, pa, pb);
    c.barrier("section-2").gate(GateKind::cnot, {a, pa}).gate(GateKind::cnot, {pb, b0});
    c.barrier("section-3").gate(GateKind::cnot, {b0, b1}).gate(GateSpec::unitary(u), {b1}).gate(GateKind::h, {pb});
    c.barrier("section-4").measure(pa, kCA0).measure(pb, kCB0);
    switch (x_correction) {
        case XCorrection::conjugated:
            c.conditional(GateSpec::simple(GateKind::x), {b0}, kCA0).conditional(GateSpec::uxu_inv(u), {b1}, kCA0);
            break;
        case XCorrection::f_parity:
            c.conditional(GateSpec::simple(GateKind::cnot), {a, b0}, kCA0)
                .conditional(GateSpec::f(phi.alpha, phi.beta), {b0, b1}, kCA0)
                .conditional(GateSpec::simple(GateKind::cnot), {a, b0}, kCA0);
            break;
        case XCorrection::literal_f:
            c.conditional(GateSpec::f(psi.alpha, psi.beta), {b0, b1}, kCA0);
            break;
    }
    c.conditional(GateSpec::simple(GateKind::z), {a}, kCB0);
    return {std::move(c),
            {{Role::a, Role::photon_a, Role::photon_b, Role::b0, Role::b1}, psi, phi},
            {a, b0, b1}};
}

}  // namespace dqc
