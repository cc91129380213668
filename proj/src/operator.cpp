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

#include "dqc/operator.hpp"

#include <cmath>

#include "dqc/error.hpp"

namespace dqc {

namespace {

bool check_unitary(std::span<const Complex> m, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + i]) * m[k * dim + j];
            }
            if (std::abs(acc - (i == j ? 1.0 : 0.0)) > kUnitaryTolerance) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

Operator::Operator(std::string name, std::size_t arity, std::vector<Complex> matrix)
    : name_(std::move(name)), arity_(arity), matrix_(std::move(matrix)) {
    if (arity_ == 0 || arity_ > 3) {
        throw Error(ErrorKind::InvalidTargets, "operator arity must be 1..3, got " + std::to_string(arity_));
    }
    if (matrix_.size() != dim() * dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operator '" + name_ + "' needs " + std::to_string(dim() * dim()) + " entries, got " +
                        std::to_string(matrix_.size()));
    }
    is_unitary_ = check_unitary(matrix_, dim());
}

Operator Operator::single(std::string name, const Matrix2 &m) {
    return Operator(std::move(name), 1, std::vector<Complex>(m.begin(), m.end()));
}

Matrix2 Operator::as_matrix2() const {
    if (arity_ != 1) {
        throw Error(ErrorKind::DimensionMismatch, "operator '" + name_ + "' is not single-qubit");
    }
    return {matrix_[0], matrix_[1], matrix_[2], matrix_[3]};
}

Operator Operator::adjoint() const {
    std::size_t d = dim();
    std::vector<Complex> out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out[j * d + i] = std::conj(matrix_[i * d + j]);
        }
    }
    return Operator(name_ + "^dag", arity_, std::move(out));
}

Operator Operator::compose(const Operator &rhs) const {
    if (rhs.arity_ != arity_) {
        throw Error(ErrorKind::DimensionMismatch, "cannot compose operators of different arity");
    }
    std::size_t d = dim();
    std::vector<Complex> out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            Complex a = matrix_[i * d + k];
            for (std::size_t j = 0; j < d; ++j) {
                out[i * d + j] += a * rhs.matrix_[k * d + j];
            }
        }
    }
    return Operator(name_ + "*" + rhs.name_, arity_, std::move(out));
}

bool Operator::approx_equal(const Operator &other, double tol) const {
    if (other.arity_ != arity_) {
        return false;
    }
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (std::abs(matrix_[i] - other.matrix_[i]) > tol) {
            return false;
        }
    }
    return true;
}

namespace gates {

Operator identity() {
    return Operator::single("i", {1.0, 0.0, 0.0, 1.0});
}

Operator pauli_x() {
    return Operator::single("x", {0.0, 1.0, 1.0, 0.0});
}

Operator pauli_z() {
    return Operator::single("z", {1.0, 0.0, 0.0, -1.0});
}

Operator hadamard() {
    double s = 1.0 / std::sqrt(2.0);
    return Operator::single("h", {s, s, s, -s});
}

Operator cnot() {
    return Operator("cnot", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
}

Operator swap() {
    return Operator("swap", 2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
}

}  // namespace gates

nlohmann::json complex_to_json(Complex c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

Complex complex_from_json(const nlohmann::json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::InvalidConfig, "complex number must be [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix2_to_json(const Matrix2 &m) {
    return nlohmann::json::array({nlohmann::json::array({complex_to_json(m[0]), complex_to_json(m[1])}),
                                  nlohmann::json::array({complex_to_json(m[2]), complex_to_json(m[3])})});
}

Matrix2 matrix2_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2) {
        throw Error(ErrorKind::InvalidConfig, "2x2 matrix must be [[a, b], [c, d]], got " + j.dump());
    }
    return {complex_from_json(j[0][0]), complex_from_json(j[0][1]), complex_from_json(j[1][0]),
            complex_from_json(j[1][1])};
}

nlohmann::json to_json(const Operator &op) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < op.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < op.dim(); ++c) {
            row.push_back(complex_to_json(op.at(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return {{"name", op.name()}, {"num_qubits", op.arity()}, {"matrix", rows}, {"is_unitary", op.is_unitary()}};
}

Operator operator_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("num_qubits") || !j.contains("matrix")) {
        throw Error(ErrorKind::InvalidConfig, "operator JSON needs num_qubits and matrix");
    }
    auto arity = j.at("num_qubits").get<std::size_t>();
    std::vector<Complex> m;
    for (const auto &row : j.at("matrix")) {
        for (const auto &c : row) {
            m.push_back(complex_from_json(c));
        }
    }
    return Operator(j.value("name", std::string("op")), arity, std::move(m));
}

}  // namespace dqc
