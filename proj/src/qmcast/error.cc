// Copyright 2026 The qmcast Authors
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

#include "qmcast/error.h"

namespace qmcast {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNonPrime:
            return "NonPrime";
        case ErrorCode::kSpecMismatch:
            return "SpecMismatch";
        case ErrorCode::kZeroInverse:
            return "ZeroInverse";
        case ErrorCode::kInconsistent:
            return "Inconsistent";
        case ErrorCode::kParseError:
            return "ParseError";
        case ErrorCode::kCyclicGraph:
            return "CyclicGraph";
        case ErrorCode::kStructureViolation:
            return "StructureViolation";
        case ErrorCode::kUnknownTarget:
            return "UnknownTarget";
        case ErrorCode::kInfeasibleRate:
            return "InfeasibleRate";
        case ErrorCode::kSearchExhausted:
            return "SearchExhausted";
        case ErrorCode::kDimMismatch:
            return "DimMismatch";
        case ErrorCode::kNonIsometry:
            return "NonIsometry";
        case ErrorCode::kUnknownRegister:
            return "UnknownRegister";
        case ErrorCode::kInsufficientEbits:
            return "InsufficientEbits";
        case ErrorCode::kConstraintViolated:
            return "ConstraintViolated";
        case ErrorCode::kEdgeNotAtSource:
            return "EdgeNotAtSource";
        case ErrorCode::kUnsolvableCode:
            return "UnsolvableCode";
        case ErrorCode::kIndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::kDegenerateParams:
            return "DegenerateParams";
        case ErrorCode::kMissingOutcome:
            return "MissingOutcome";
        case ErrorCode::kSupportViolation:
            return "SupportViolation";
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
        case ErrorCode::kIoError:
            return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace qmcast
