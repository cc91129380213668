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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dqc/error.hpp"
#include "dqc/protocols.hpp"
#include "support/oracle.hpp"

namespace dqc {
namespace {

using oracle::Mat;
using oracle::Vec;

constexpr double kTol = 1e-10;

Vec to_vec(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

Mat to_mat(const Operator &op) {
    Mat m(op.dim());
    for (std::size_t r = 0; r < op.dim(); ++r) {
        for (std::size_t c = 0; c < op.dim(); ++c) {
            m(r, c) = op.at(r, c);
        }
    }
    return m;
}

Operator from_mat(const Mat &m) {
    return Operator::single("u", {m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
}

QubitState random_qubit(std::mt19937_64 &rng) {
    for (;;) {
        Vec v = oracle::random_state(2, rng);
        if (std::min(std::abs(v[0]), std::abs(v[1])) >= 1e-6) {
            return {v[0], v[1]};
        }
    }
}

template <class Fn>
void expect_error(ErrorKind kind, Fn &&fn) {
    try {
        fn();
        FAIL() << "expected " << to_string(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

std::vector<std::vector<int>> all_outcomes(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
        std::vector<int> bits;
        for (std::size_t i = 0; i < n; ++i) {
            bits.push_back(static_cast<int>((m >> (n - 1 - i)) & 1U));
        }
        out.push_back(bits);
    }
    return out;
}

StateVector final_output(const ProtocolCircuit &pc, const std::vector<int> &outcome) {
    auto run = run_circuit(pc.circuit, outcome);
    return extract_subsystem(run.state, pc.output_qubits);
}

/// The circuit up to (excluding) its first classically conditioned gate.
Circuit before_corrections(const Circuit &c) {
    auto j = to_json(c);
    auto &list = j.at("instructions");
    nlohmann::json kept = nlohmann::json::array();
    for (const auto &ins : list) {
        if (ins.at("op") == "cond") {
            break;
        }
        kept.push_back(ins);
    }
    list = kept;
    return circuit_from_json(j);
}

double fid(const Vec &a, const Vec &b) {
    return oracle::overlap2(a, b);
}

TEST(BellPrep, FromZeroZero) {
    Circuit c(2, 0, 0);
    bell_prep(c, 0, 1);
    auto s = run_circuit(c, std::vector<int>{}).state;
    Vec expected{M_SQRT1_2, 0, 0, M_SQRT1_2};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-15);
    }
}

TEST(BellPrep, FromOneZero) {
    Circuit c(2, 0, 0);
    bell_prep(c, 0, 1);
    auto s = run_circuit_from(c, StateVector::basis(2, 0b10), std::vector<int>{}).state;
    Vec expected = oracle::CNOT * (oracle::kron(oracle::H, oracle::I2) * Vec{0, 0, 1, 0});
    EXPECT_NEAR(std::abs(expected[0] - M_SQRT1_2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(expected[3] + M_SQRT1_2), 0.0, 1e-15);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-15);
    }
}

TEST(BellPrep, InverseRestoresRandomStates) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        Vec v = oracle::random_state(4, rng);
        Circuit c(2, 0, 0);
        bell_prep(c, 0, 1);
        c.gate(GateKind::cnot, {0, 1}).gate(GateKind::h, {0});
        auto s = run_circuit_from(c, StateVector::from_amplitudes(v), std::vector<int>{}).state;
        for (std::size_t i = 0; i < 4; ++i) {
            ASSERT_NEAR(std::abs(s[i] - v[i]), 0.0, 1e-12);
        }
    }
}

TEST(BellPrep, SameQubitRejected) {
    Circuit c(2, 0, 0);
    expect_error(ErrorKind::InvalidTargets, [&] { bell_prep(c, 1, 1); });
}

TEST(Teledata, BasisStateTransfers) {
    auto pc = build_teledata({1.0, 0.0});
    for (const auto &o : all_outcomes(2)) {
        auto out = final_output(pc, o);
        EXPECT_NEAR(std::abs(out[0]), 1.0, 1e-12);
    }
}

TEST(Teledata, ZeroZeroBranchNeedsNoCorrection) {
    QubitState plus{M_SQRT1_2, M_SQRT1_2};
    auto pc = build_teledata(plus);
    auto run = run_circuit(before_corrections(pc.circuit), std::vector<int>{0, 0});
    std::vector<std::size_t> keep{2};
    auto photon = extract_subsystem(run.state, keep);
    EXPECT_GE(fid(to_vec(photon), {plus.alpha, plus.beta}), 1.0 - kTol);
}

TEST(Teledata, OutcomeIndependentAndMatchesOracle) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = random_qubit(rng);
        auto pc = build_teledata(psi);
        Vec expected{psi.alpha, 0, 0, psi.beta};
        for (const auto &o : all_outcomes(2)) {
            ASSERT_GE(fid(to_vec(final_output(pc, o)), expected), 1.0 - kTol);
        }
    }
}

TEST(Teledata, NotNormalizedInput) {
    expect_error(ErrorKind::NotNormalized, [] { build_teledata({1.0, 1.0}); });
}

TEST(Telegate, ClassicalCnot) {
    auto pc = build_telegate({0.0, 1.0}, {1.0, 0.0});
    for (const auto &o : all_outcomes(2)) {
        auto out = final_output(pc, o);
        EXPECT_NEAR(std::abs(out[3]), 1.0, 1e-12);
    }
}

TEST(Telegate, PlusZeroGivesBellPair) {
    auto pc = build_telegate({M_SQRT1_2, M_SQRT1_2}, {1.0, 0.0});
    for (const auto &o : all_outcomes(2)) {
        EXPECT_GE(fid(to_vec(final_output(pc, o)), {M_SQRT1_2, 0, 0, M_SQRT1_2}), 1.0 - kTol);
    }
}

TEST(Telegate, RandomInputsMatchCnotMatrix) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = random_qubit(rng);
        auto phi = random_qubit(rng);
        auto pc = build_telegate(psi, phi);
        Vec expected = oracle::CNOT * oracle::kron(Vec{psi.alpha, psi.beta}, Vec{phi.alpha, phi.beta});
        for (const auto &o : all_outcomes(2)) {
            ASSERT_GE(fid(to_vec(final_output(pc, o)), expected), 1.0 - kTol);
        }
    }
}

TEST(MakeF, Examples) {
    auto id = make_F(M_SQRT1_2, M_SQRT1_2);
    EXPECT_TRUE(id.approx_equal(Operator("i", 2, Mat::eye(4).a), 1e-15));
    EXPECT_TRUE(id.is_unitary());

    auto f = make_F(std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0));
    const double r = 1.0 / std::sqrt(2.0);
    Vec diag{r, r, std::sqrt(2.0), std::sqrt(2.0)};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_NEAR(std::abs(f.at(i, j) - (i == j ? diag[i] : 0.0)), 0.0, 1e-15);
        }
    }
    EXPECT_FALSE(f.is_unitary());
}

TEST(MakeF, PhaseOnlyRatioIsUnitary) {
    auto f = make_F(M_SQRT1_2, Complex(0.0, M_SQRT1_2));
    EXPECT_TRUE(f.is_unitary());
}

TEST(MakeF, DegenerateAmplitude) {
    expect_error(ErrorKind::DegenerateAmplitude, [] { make_F(1.0, 0.0); });
    expect_error(ErrorKind::DegenerateAmplitude, [] { make_F(0.0, 1.0); });
}

// alpha|1>U|1> + beta|0>U|0> over (photon, B) as a column vector.
Vec x_branch(const QubitState &psi, const Mat &u) {
    return {psi.beta * u(0, 0), psi.beta * u(1, 0), psi.alpha * u(0, 1), psi.alpha * u(1, 1)};
}

Vec target_state(const QubitState &psi, const Mat &u) {
    return {psi.alpha * u(0, 0), psi.alpha * u(1, 0), psi.beta * u(0, 1), psi.beta * u(1, 1)};
}

TEST(MakeF, MapsXBranchOntoTarget) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto psi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        Vec branch = x_branch(psi, u);
        auto s = StateVector::from_amplitudes(branch);
        s.apply(make_F(psi.alpha, psi.beta), {0, 1});
        ASSERT_EQ(s.norm_log().size(), 1u);
        EXPECT_NEAR(s.norm_log()[0], 1.0, 1e-10);
        Vec expected = target_state(psi, u);
        for (std::size_t i = 0; i < 4; ++i) {
            ASSERT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-12);
        }
    }
}

TEST(MakeG, IdentityHitsZeroDenominator) {
    auto g = make_G(gates::identity());
    EXPECT_TRUE(g.used_fallback);
    EXPECT_EQ(g.diagnostic.rfind("GDenominatorZero", 0), 0u) << g.diagnostic;
    EXPECT_TRUE(g.op.approx_equal(g_linear_fallback(), 1e-15));
}

TEST(MakeG, HadamardReducesToConstant) {
    auto g = make_G(gates::hadamard());
    EXPECT_FALSE(g.used_fallback);
    EXPECT_TRUE(g.u_independent);
    Mat expected = Mat::from(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1});
    EXPECT_TRUE(g.op.approx_equal(Operator("g", 2, expected.a), 1e-15));
}

TEST(MakeG, EveryRandomUnitaryGivesTheSameOperator) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = make_G(from_mat(oracle::random_unitary(2, rng)));
        EXPECT_TRUE(g.u_independent);
        EXPECT_TRUE(g.op.approx_equal(g_linear_fallback(), 1e-12));
    }
}

TEST(MakeG, NonunitaryPayloadRejected) {
    expect_error(ErrorKind::NotUnitary, [] { make_G(Operator("m", 1, {1.0, 0.0, 0.0, 2.0})); });
}

// alpha|0>U|0> - beta|1>U|1>.
Vec z_branch(const QubitState &psi, const Mat &u) {
    return {psi.alpha * u(0, 0), psi.alpha * u(1, 0), -psi.beta * u(0, 1), -psi.beta * u(1, 1)};
}

TEST(ZCorrections, AllReadingsAgreeOnZBranch) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        Operator uop = from_mat(u);
        Vec branch = z_branch(psi, u);
        Vec target = target_state(psi, u);

        auto via_g = StateVector::from_amplitudes(branch);
        via_g.apply(make_G(uop).op, {0, 1});
        auto via_const = StateVector::from_amplitudes(branch);
        via_const.apply(g_linear_fallback(), {0, 1});
        auto via_photon_z = StateVector::from_amplitudes(branch);
        via_photon_z.apply(gates::pauli_z(), {0});
        auto via_conj = StateVector::from_amplitudes(branch);
        for (const auto &op : correction_z_conjugated(uop)) {
            via_conj.apply(op, {1});
        }
        Vec z_on_photon = oracle::kron(oracle::Z, oracle::I2) * branch;

        std::vector<Vec> results{to_vec(via_g), to_vec(via_const), to_vec(via_photon_z), to_vec(via_conj),
                                 z_on_photon};
        for (const auto &a : results) {
            ASSERT_GE(fid(a, target), 1.0 - kTol);
            for (const auto &b : results) {
                ASSERT_GE(fid(a, b), 1.0 - kTol);
            }
        }
    }
}

TEST(ZCorrections, ConjugatedSequenceShape) {
    auto seq = correction_z_conjugated(gates::identity());
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_TRUE(seq[0].approx_equal(gates::identity(), 1e-15));
    EXPECT_TRUE(seq[1].approx_equal(gates::pauli_z(), 1e-15));
    EXPECT_TRUE(seq[2].approx_equal(gates::identity(), 1e-15));

    auto xs = correction_z_conjugated(gates::pauli_x());
    Mat net = to_mat(xs[2]) * to_mat(xs[1]) * to_mat(xs[0]);
    Mat minus_z = Mat::from(2, {-1, 0, 0, 1});
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(net.a[i] - minus_z.a[i]), 0.0, 1e-15);
    }
    QubitState psi{0.6, 0.8};
    auto s = StateVector::from_amplitudes(z_branch(psi, oracle::X));
    for (const auto &op : xs) {
        s.apply(op, {1});
    }
    EXPECT_GE(fid(to_vec(s), target_state(psi, oracle::X)), 1.0 - kTol);
}

TEST(AsyncTeledata, IdentityReducesToSync) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_qubit(rng);
        auto pc = build_async_teledata(psi, gates::identity());
        for (const auto &o : all_outcomes(2)) {
            ASSERT_GE(fid(to_vec(final_output(pc, o)), {psi.alpha, 0, 0, psi.beta}), 1.0 - kTol);
        }
    }
}

TEST(AsyncTeledata, XBranchBeforeAndAfterF) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        auto pc = build_async_teledata(psi, from_mat(u));
        std::vector<int> outcome{0, 1};
        auto pre = run_circuit(before_corrections(pc.circuit), outcome).state;
        ASSERT_GE(fid(to_vec(extract_subsystem(pre, pc.output_qubits)), x_branch(psi, u)), 1.0 - kTol);

        auto post = run_circuit(pc.circuit, outcome);
        ASSERT_EQ(post.state.norm_log().size(), 1u);
        EXPECT_NEAR(post.state.norm_log()[0], 1.0, 1e-10);
        ASSERT_GE(fid(to_vec(extract_subsystem(post.state, pc.output_qubits)), target_state(psi, u)), 1.0 - kTol);
    }
}

TEST(AsyncTeledata, BothZStrategiesMatchOracleOnAllOutcomes) {
    std::mt19937_64 rng(9);
    for (auto strategy : {ZCorrection::conjugated, ZCorrection::g_operator}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto psi = random_qubit(rng);
            Mat u = oracle::random_unitary(2, rng);
            auto pc = build_async_teledata(psi, from_mat(u), strategy);
            for (const auto &o : all_outcomes(2)) {
                ASSERT_GE(fid(to_vec(final_output(pc, o)), target_state(psi, u)), 1.0 - kTol);
            }
        }
    }
}

TEST(AsyncTeledata, DegeneratePsiRejected) {
    expect_error(ErrorKind::DegenerateAmplitude, [] { build_async_teledata({1.0, 0.0}, gates::hadamard()); });
}

// sum_b c_b |b>U|b>: the basis copy made by CNot(B0 -> B1) followed by U on B1.
Vec copied(const Vec &c, const Mat &u) {
    Vec out = oracle::kron(Vec{c[0], 0}, u * Vec{1, 0});
    Vec one = oracle::kron(Vec{0, c[1]}, u * Vec{0, 1});
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] += one[i];
    }
    return out;
}

Vec branch_sum(Complex a, const Vec &zero_part, Complex b, const Vec &one_part) {
    Vec x = oracle::kron(Vec{a, 0}, zero_part);
    Vec y = oracle::kron(Vec{0, b}, one_part);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += y[i];
    }
    return x;
}

// alpha|0>|phi>U|phi> + beta|1>|phi~>U|phi~> over (A, B0, B1), copies taken in the basis.
Vec telegate_target(const QubitState &psi, const QubitState &phi, const Mat &u) {
    return branch_sum(psi.alpha, copied({phi.alpha, phi.beta}, u), psi.beta, copied({phi.beta, phi.alpha}, u));
}

TEST(AsyncTelegate, PlusZeroIdentityGivesGhz) {
    auto pc = build_async_telegate({M_SQRT1_2, M_SQRT1_2}, {1.0, 0.0}, gates::identity());
    Vec ghz{M_SQRT1_2, 0, 0, 0, 0, 0, 0, M_SQRT1_2};
    for (const auto &o : all_outcomes(2)) {
        EXPECT_GE(fid(to_vec(final_output(pc, o)), ghz), 1.0 - kTol);
    }
}

TEST(AsyncTelegate, XBranchBeforeCorrection) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_qubit(rng);
        auto phi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        auto pc = build_async_telegate(psi, phi, from_mat(u));
        auto pre = run_circuit(before_corrections(pc.circuit), std::vector<int>{1, 0}).state;
        // The photon_A outcome flips B0: phi and phi~ trade places between the branches.
        Vec expected =
            branch_sum(psi.alpha, copied({phi.beta, phi.alpha}, u), psi.beta, copied({phi.alpha, phi.beta}, u));
        ASSERT_GE(fid(to_vec(extract_subsystem(pre, pc.output_qubits)), expected), 1.0 - kTol);
    }
}

TEST(AsyncTelegate, XStrategies) {
    std::mt19937_64 rng(11);
    std::size_t literal_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = random_qubit(rng);
        auto phi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        Vec target = telegate_target(psi, phi, u);
        for (auto strategy : {XCorrection::conjugated, XCorrection::f_parity}) {
            auto pc = build_async_telegate(psi, phi, from_mat(u), strategy);
            for (const auto &o : all_outcomes(2)) {
                ASSERT_GE(fid(to_vec(final_output(pc, o)), target), 1.0 - kTol);
            }
        }
        auto literal = build_async_telegate(psi, phi, from_mat(u), XCorrection::literal_f);
        for (const auto &o : all_outcomes(2)) {
            try {
                if (fid(to_vec(final_output(literal, o)), target) < 1.0 - kTol) {
                    ++literal_failures;
                }
            } catch (const Error &e) {
                ASSERT_EQ(e.kind(), ErrorKind::NotProductState);
                ++literal_failures;
            }
        }
    }
    // Scaling B0, B1 by psi's ratio cannot disentangle A from the flipped B0.
    EXPECT_GE(literal_failures, 100u);
}

TEST(AsyncTelegate, DegeneracyDependsOnStrategy) {
    QubitState basis{1.0, 0.0};
    QubitState plus{M_SQRT1_2, M_SQRT1_2};
    EXPECT_NO_THROW(build_async_telegate(basis, basis, gates::hadamard(), XCorrection::conjugated));
    expect_error(ErrorKind::DegenerateAmplitude,
                 [&] { build_async_telegate(basis, plus, gates::hadamard(), XCorrection::literal_f); });
    expect_error(ErrorKind::DegenerateAmplitude,
                 [&] { build_async_telegate(plus, basis, gates::hadamard(), XCorrection::f_parity); });
}

TEST(Properties, OutcomeIndependenceUnderComposedUnitaries) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        Mat u = Mat::eye(2);
        for (std::size_t i = 0; i < n; ++i) {
            u = oracle::random_unitary(2, rng) * u;
        }
        auto psi = random_qubit(rng);
        auto phi = random_qubit(rng);
        std::vector<ProtocolCircuit> circuits;
        circuits.push_back(build_async_teledata(psi, from_mat(u)));
        circuits.push_back(build_async_telegate(psi, phi, from_mat(u)));
        for (const auto &pc : circuits) {
            Vec first = to_vec(final_output(pc, {0, 0}));
            for (const auto &o : all_outcomes(2)) {
                ASSERT_GE(fid(to_vec(final_output(pc, o)), first), 1.0 - kTol);
            }
        }
    }
}

TEST(Properties, AsyncEqualsSyncFollowedBySuffix) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = random_qubit(rng);
        auto phi = random_qubit(rng);
        Mat u = oracle::random_unitary(2, rng);
        for (const auto &o : all_outcomes(2)) {
            Vec sync = to_vec(final_output(build_teledata(psi), o));
            Vec expected = oracle::kron(oracle::I2, u) * sync;
            ASSERT_GE(fid(to_vec(final_output(build_async_teledata(psi, from_mat(u)), o)), expected), 1.0 - kTol);

            Vec gate = to_vec(final_output(build_telegate(psi, phi), o));
            Vec widened = oracle::kron(gate, Vec{1, 0});
            Vec suffix = oracle::embed(u, {2}, 3) * (oracle::embed(oracle::CNOT, {1, 2}, 3) * widened);
            ASSERT_GE(fid(to_vec(final_output(build_async_telegate(psi, phi, from_mat(u)), o)), suffix),
                      1.0 - kTol);
        }
    }
}

TEST(Circuit, ConditionalNeedsEarlierMeasurement) {
    Circuit c(2, 1, 0);
    expect_error(ErrorKind::InvalidCircuit, [&] { c.conditional(GateSpec::simple(GateKind::x), {1}, {}); });
    c.measure(0, {});
    EXPECT_NO_THROW(c.conditional(GateSpec::simple(GateKind::x), {1}, {}));
}

TEST(Circuit, UndeclaredBitsAndQubits) {
    Circuit c(2, 1, 0);
    EXPECT_THROW(c.measure(0, {Register::cB, 0}), Error);
    EXPECT_THROW(c.gate(GateKind::h, {2}), Error);
}

TEST(Circuit, SectionsOfAsyncTelegate) {
    auto pc = build_async_telegate({0.6, 0.8}, {0.8, 0.6}, gates::hadamard());
    std::vector<std::string> expected{"prep", "section-1", "section-2", "section-3", "section-4"};
    EXPECT_EQ(pc.circuit.section_labels(), expected);
    EXPECT_EQ(pc.circuit.num_qubits(), 5u);
    EXPECT_EQ(pc.layout.qubit(Role::b1), 4u);
}

TEST(Circuit, JsonRoundTripPreservesBehaviour) {
    std::mt19937_64 rng(14);
    auto psi = random_qubit(rng);
    auto phi = random_qubit(rng);
    Operator u = from_mat(oracle::random_unitary(2, rng));
    std::vector<ProtocolCircuit> circuits;
    circuits.push_back(build_async_teledata(psi, u, ZCorrection::g_operator));
    circuits.push_back(build_async_telegate(psi, phi, u, XCorrection::f_parity));
    circuits.push_back(build_async_telegate(psi, phi, u, XCorrection::conjugated));
    for (const auto &pc : circuits) {
        auto j = to_json(pc.circuit);
        auto back = circuit_from_json(j);
        EXPECT_EQ(to_json(back), j);
        for (const auto &o : all_outcomes(2)) {
            auto a = run_circuit(pc.circuit, o).state;
            auto b = run_circuit(back, o).state;
            EXPECT_EQ(to_vec(a), to_vec(b));
        }
    }
}

TEST(Circuit, JsonShape) {
    auto j = to_json(build_async_teledata({0.6, 0.8}, gates::hadamard()).circuit);
    bool saw_f = false;
    for (const auto &ins : j.at("instructions")) {
        if (ins.at("op") == "cond" && ins.at("gate") == "f") {
            saw_f = true;
            EXPECT_EQ(ins.at("cbit"), "cA.1");
            EXPECT_EQ(ins.at("targets"), nlohmann::json::array({2, 3}));
            EXPECT_TRUE(ins.contains("alpha"));
        }
    }
    EXPECT_TRUE(saw_f);
    EXPECT_EQ(j.at("num_qubits"), 4);
}

}  // namespace
}  // namespace dqc
