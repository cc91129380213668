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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace dqc {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<Complex, 4>;

inline constexpr double kUnitaryTolerance = 1e-10;

/// A dense matrix acting on `arity` qubits. Unitarity is measured at construction
/// (max |(M^dagger M - I)_ij| <= 1e-10), never taken on trust.
class Operator {
   public:
    Operator(std::string name, std::size_t arity, std::vector<Complex> matrix);

    static Operator single(std::string name, const Matrix2 &m);

    const std::string &name() const noexcept {
        return name_;
    }
    std::size_t arity() const noexcept {
        return arity_;
    }
    std::size_t dim() const noexcept {
        return std::size_t{1} << arity_;
    }
    bool is_unitary() const noexcept {
        return is_unitary_;
    }
    const Complex &at(std::size_t row, std::size_t col) const {
        return matrix_[row * dim() + col];
    }
    std::span<const Complex> matrix() const noexcept {
        return matrix_;
    }

    /// Only valid for arity 1.
    Matrix2 as_matrix2() const;

    Operator adjoint() const;

    /// Matrix product `*this * rhs` (rhs acts first).
    Operator compose(const Operator &rhs) const;

    bool approx_equal(const Operator &other, double tol) const;

   private:
    std::string name_;
    std::size_t arity_;
    std::vector<Complex> matrix_;
    bool is_unitary_;
};

namespace gates {

Operator identity();
Operator pauli_x();
Operator pauli_z();
Operator hadamard();
Operator cnot();
Operator swap();

}  // namespace gates

nlohmann::json to_json(const Operator &op);
Operator operator_from_json(const nlohmann::json &j);

nlohmann::json matrix2_to_json(const Matrix2 &m);
Matrix2 matrix2_from_json(const nlohmann::json &j);

nlohmann::json complex_to_json(Complex c);
Complex complex_from_json(const nlohmann::json &j);

}  // namespace dqc
