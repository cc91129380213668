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

#include "dqc/error.hpp"

namespace dqc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidBasisIndex:
            return "InvalidBasisIndex";
        case ErrorKind::InvalidTargets:
            return "InvalidTargets";
        case ErrorKind::AnnihilatedState:
            return "AnnihilatedState";
        case ErrorKind::ImpossibleOutcome:
            return "ImpossibleOutcome";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NotNormalized:
            return "NotNormalized";
        case ErrorKind::NotUnitary:
            return "NotUnitary";
        case ErrorKind::NotProductState:
            return "NotProductState";
        case ErrorKind::InvalidCircuit:
            return "InvalidCircuit";
        case ErrorKind::DegenerateAmplitude:
            return "DegenerateAmplitude";
        case ErrorKind::GDenominatorZero:
            return "GDenominatorZero";
        case ErrorKind::UnknownProtocol:
            return "UnknownProtocol";
        case ErrorKind::UnknownQubit:
            return "UnknownQubit";
        case ErrorKind::NoRoute:
            return "NoRoute";
        case ErrorKind::CardFull:
            return "CardFull";
        case ErrorKind::InvalidConfig:
            return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {
}

}  // namespace dqc
