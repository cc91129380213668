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
#include "dqc/operator.hpp"
#include "dqc/state_vector.hpp"
#include "support/oracle.hpp"

namespace dqc {
namespace {

using oracle::Mat;
using oracle::Vec;

Operator to_operator(const Mat &m, const std::string &name = "m") {
    std::size_t arity = m.n == 2 ? 1 : (m.n == 4 ? 2 : 3);
    return Operator(name, arity, m.a);
}

StateVector to_state(const Vec &v) {
    return StateVector::from_amplitudes(v);
}

Vec to_vec(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
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

TEST(StateVector, BasisStates) {
    auto s = StateVector::basis(1, 0);
    ASSERT_EQ(s.amplitudes().size(), 2u);
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_EQ(s[1], Complex(0.0));

    auto t = StateVector::basis(2, 3);
    EXPECT_EQ(t[0], Complex(0.0));
    EXPECT_EQ(t[3], Complex(1.0));

    expect_error(ErrorKind::InvalidBasisIndex, [] { StateVector::basis(3, 8); });
}

TEST(StateVector, RejectsUnnormalizedAmplitudes) {
    expect_error(ErrorKind::NotNormalized, [] { StateVector::from_amplitudes({1.0, 1.0}); });
}

TEST(ApplyOperator, PauliXFlipsZero) {
    auto s = StateVector::basis(1, 0);
    s.apply(gates::pauli_x(), {0});
    EXPECT_NEAR(std::abs(s[1] - Complex(1.0)), 0.0, 1e-15);
}

TEST(ApplyOperator, HadamardsThenCnotMatchesMatrixProduct) {
    auto s = StateVector::basis(2, 0);
    s.apply(gates::hadamard(), {0});
    s.apply(gates::hadamard(), {1});
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - Complex(0.5)), 0.0, 1e-15);
    }
    s.apply(gates::cnot(), {0, 1});
    Vec expected = oracle::CNOT * oracle::kron(oracle::H * Vec{1, 0}, oracle::H * Vec{1, 0});
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-15);
    }
}

TEST(ApplyOperator, CnotOnBasisStatesFollowsConvention) {
    // Control is the first listed target, whichever qubit that is.
    auto s = StateVector::basis(3, 0b100);
    s.apply(gates::cnot(), {0, 2});
    EXPECT_NEAR(std::abs(s[0b101]), 1.0, 1e-15);

    auto t = StateVector::basis(3, 0b001);
    t.apply(gates::cnot(), {2, 0});
    EXPECT_NEAR(std::abs(t[0b101]), 1.0, 1e-15);
}

TEST(ApplyOperator, MatchesEmbeddedFullMatrix) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t nq = 2 + trial % 4;
        Vec v = oracle::random_state(std::size_t{1} << nq, rng);
        std::vector<std::size_t> order(nq);
        for (std::size_t i = 0; i < nq; ++i) {
            order[i] = i;
        }
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t k = 1 + trial % 2;
        std::vector<std::size_t> targets(order.begin(), order.begin() + static_cast<long>(k));
        Mat u = oracle::random_unitary(std::size_t{1} << k, rng);

        auto s = to_state(v);
        s.apply(to_operator(u), targets);
        Vec expected = oracle::embed(u, targets, nq) * v;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            ASSERT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-12);
        }
    }
}

TEST(ApplyOperator, InvalidTargets) {
    auto s = StateVector::basis(2, 0);
    expect_error(ErrorKind::InvalidTargets, [&] { s.apply(gates::cnot(), {1, 1}); });
    expect_error(ErrorKind::InvalidTargets, [&] { s.apply(gates::pauli_x(), {2}); });
    expect_error(ErrorKind::InvalidTargets, [&] { s.apply(gates::cnot(), {0}); });
}

TEST(ApplyOperator, NonunitaryRenormalizesAndLogs) {
    Operator scale("diag", 1, {2.0, 0.0, 0.0, 1.0});
    EXPECT_FALSE(scale.is_unitary());
    auto s = StateVector::from_amplitudes({M_SQRT1_2, M_SQRT1_2});
    s.apply(scale, {0}, Renormalize::yes);
    ASSERT_EQ(s.norm_log().size(), 1u);
    EXPECT_NEAR(s.norm_log()[0], std::sqrt(2.5), 1e-14);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(s[0]), 2.0 / std::sqrt(5.0), 1e-14);

    auto raw = StateVector::from_amplitudes({M_SQRT1_2, M_SQRT1_2});
    raw.apply(scale, {0}, Renormalize::no);
    EXPECT_NEAR(raw.norm(), std::sqrt(2.5), 1e-14);
    EXPECT_TRUE(raw.norm_log().empty());
}

TEST(ApplyOperator, AnnihilationIsAnError) {
    Operator proj("p1", 1, {0.0, 0.0, 0.0, 1.0});
    auto s = StateVector::basis(1, 0);
    expect_error(ErrorKind::AnnihilatedState, [&] { s.apply(proj, {0}, Renormalize::yes); });
}

TEST(Operator, UnitarityIsChecked) {
    EXPECT_TRUE(gates::hadamard().is_unitary());
    EXPECT_TRUE(gates::cnot().is_unitary());
    EXPECT_FALSE(Operator("f", 1, {1.0, 0.0, 0.0, 1.0 + 1e-8}).is_unitary());
    EXPECT_TRUE(Operator("f", 1, {1.0, 0.0, 0.0, 1.0 + 1e-12}).is_unitary());
    expect_error(ErrorKind::DimensionMismatch, [] { Operator("bad", 1, {1.0, 0.0, 0.0}); });
}

TEST(Measure, DeterministicAndBell) {
    auto one = StateVector::basis(1, 1);
    std::mt19937_64 rng(3);
    auto m = one.measure(0, rng);
    EXPECT_EQ(m.bit, 1);
    EXPECT_NEAR(std::abs(one[1]), 1.0, 1e-15);

    auto bell = StateVector::from_amplitudes({M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    auto f = bell.measure_forced(0, 0);
    EXPECT_EQ(f.bit, 0);
    EXPECT_NEAR(f.probability, 0.5, 1e-15);
    EXPECT_NEAR(std::abs(bell[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(bell[3]), 0.0, 1e-15);
}

TEST(Measure, ForcingImpossibleOutcomeFails) {
    auto s = StateVector::basis(2, 0);
    expect_error(ErrorKind::ImpossibleOutcome, [&] { s.measure_forced(1, 1); });
}

TEST(Measure, TeledataPreMeasurementBranchesAreUniform) {
    // Bell pair on (1,2), psi on 0, then CNot(0->1), H(0): every outcome of (0,1) has weight 1/4.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Vec psi = oracle::random_state(2, rng);
        Vec bell{M_SQRT1_2, 0, 0, M_SQRT1_2};
        Vec full = oracle::kron(psi, oracle::kron(bell, Vec{1, 0}));
        auto s = to_state(full);
        s.apply(gates::cnot(), {0, 1});
        s.apply(gates::hadamard(), {0});
        for (int b0 = 0; b0 < 2; ++b0) {
            for (int b1 = 0; b1 < 2; ++b1) {
                auto copy = s;
                double p0 = copy.measure_forced(0, b0).probability;
                double p1 = copy.measure_forced(1, b1).probability;
                EXPECT_NEAR(p0 * p1, 0.25, 1e-12);
            }
        }
    }
}

TEST(Measure, SeededSamplingIsReproducibleAndCalibrated) {
    auto base = StateVector::from_amplitudes({std::sqrt(0.3), std::sqrt(0.7)});
    std::mt19937_64 a(99);
    std::mt19937_64 b(99);
    int ones = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        auto s1 = base;
        auto s2 = base;
        int x = s1.measure(0, a).bit;
        EXPECT_EQ(x, s2.measure(0, b).bit);
        ones += x;
    }
    EXPECT_NEAR(static_cast<double>(ones) / n, 0.7, 0.02);
}

TEST(Fidelity, Examples) {
    auto zero = StateVector::basis(1, 0);
    auto minus_zero = StateVector::from_amplitudes({-1.0, 0.0});
    auto plus = StateVector::from_amplitudes({M_SQRT1_2, M_SQRT1_2});
    EXPECT_NEAR(fidelity_up_to_phase(zero, zero), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_up_to_phase(zero, minus_zero), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_up_to_phase(zero, plus), 0.5, 1e-15);
    expect_error(ErrorKind::DimensionMismatch, [&] { fidelity_up_to_phase(zero, StateVector::basis(2, 0)); });
}

TEST(Properties, UnitaryApplicationPreservesNorm) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t nq = 1 + trial % 4;
        auto s = to_state(oracle::random_state(std::size_t{1} << nq, rng));
        const std::size_t k = nq == 1 ? 1 : 1 + trial % 2;
        std::vector<std::size_t> targets{static_cast<std::size_t>(trial) % nq};
        if (k == 2) {
            targets.push_back((targets[0] + 1) % nq);
        }
        s.apply(to_operator(oracle::random_unitary(std::size_t{1} << k, rng)), targets);
        ASSERT_LT(std::abs(s.norm() - 1.0), 1e-12);
    }
}

TEST(Properties, TargetOrderMatchesSwapConjugation) {
    std::mt19937_64 rng(8);
    Mat swap = Mat::from(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    for (int trial = 0; trial < 200; ++trial) {
        Mat u = oracle::random_unitary(4, rng);
        Vec v = oracle::random_state(8, rng);
        auto a = to_state(v);
        auto b = to_state(v);
        a.apply(to_operator(u), {0, 2});
        b.apply(to_operator(swap * u * swap), {2, 0});
        for (std::size_t i = 0; i < 8; ++i) {
            ASSERT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12);
        }
    }
}

TEST(Properties, ForcedOutcomeProbabilitiesSumToOne) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        auto s = to_state(oracle::random_state(16, rng));
        std::size_t q = static_cast<std::size_t>(trial % 4);
        double total = 0.0;
        for (int bit = 0; bit < 2; ++bit) {
            auto copy = s;
            total += copy.measure_forced(q, bit).probability;
            EXPECT_NEAR(copy.norm(), 1.0, 1e-12);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Subsystem, ExtractAfterMeasurement) {
    auto s = tensor(StateVector::from_amplitudes({0.6, 0.8}), StateVector::basis(1, 1));
    std::vector<std::size_t> keep{0};
    auto r = extract_subsystem(s, keep);
    EXPECT_NEAR(std::abs(r[0] - Complex(0.6)), 0.0, 1e-15);

    auto bell = StateVector::from_amplitudes({M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    expect_error(ErrorKind::NotProductState, [&] { extract_subsystem(bell, keep); });
}

TEST(Json, StateRoundTrip) {
    auto s = StateVector::from_amplitudes({Complex(0.6, 0.0), Complex(0.0, 0.8)});
    auto j = to_json(s);
    EXPECT_EQ(j.at("num_qubits"), 1);
    EXPECT_DOUBLE_EQ(j.at("amplitudes")[1][1].get<double>(), 0.8);
    auto back = state_from_json(j);
    EXPECT_EQ(to_vec(back), to_vec(s));
}

TEST(Json, OperatorRoundTrip) {
    auto j = to_json(gates::hadamard());
    auto back = operator_from_json(j);
    EXPECT_TRUE(back.approx_equal(gates::hadamard(), 0.0));
    EXPECT_TRUE(j.at("is_unitary").get<bool>());
}

}  // namespace
}  // namespace dqc
