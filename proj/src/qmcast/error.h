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

#ifndef QMCAST_ERROR_H
#define QMCAST_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmcast {

/// Every failure the library can report. The numeric values are mirrored by
/// `qmc_status` in the public C header and must stay in sync with it.
enum class ErrorCode : int {
    kNonPrime = 1,
    kSpecMismatch = 2,
    kZeroInverse = 3,
    kInconsistent = 4,
    kParseError = 5,
    kCyclicGraph = 6,
    kStructureViolation = 7,
    kUnknownTarget = 8,
    kInfeasibleRate = 9,
    kSearchExhausted = 10,
    kDimMismatch = 11,
    kNonIsometry = 12,
    kUnknownRegister = 13,
    kInsufficientEbits = 14,
    kConstraintViolated = 15,
    kEdgeNotAtSource = 16,
    kUnsolvableCode = 17,
    kIndexOutOfRange = 18,
    kDegenerateParams = 19,
    kMissingOutcome = 20,
    kSupportViolation = 21,
    kInvalidArgument = 22,
    kIoError = 23,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

}  // namespace qmcast

#endif
