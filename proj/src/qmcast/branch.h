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

#ifndef QMCAST_BRANCH_H
#define QMCAST_BRANCH_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmcast/qudit_state.h"

namespace qmcast {

/// Outcome value used for a key whose merged branches disagreed.
constexpr int64_t kMixedOutcome = -1;

/// One path through a protocol: its unnormalized state and the classical
/// outcomes seen along the way.
struct Branch {
    PureState state;
    std::map<std::string, int64_t> outcomes;

    double probability() const {
        return state.norm2();
    }
};

/// Groups branches whose states agree up to a global phase and scale, and
/// replaces each group by one branch with the group's total weight. Later steps
/// must not depend on any outcome that differs inside a group; such outcomes
/// are recorded as kMixedOutcome.
std::vector<Branch> merge_equivalent(std::vector<Branch> branches, double tol = 1e-9, double drop = 1e-24);

/// Measures `reg` on every branch, recording the outcome under `key` and
/// dropping outcomes of negligible weight.
std::vector<Branch> measure_branches(
    const std::vector<Branch> &branches, const std::string &reg, const Measurement &m, const std::string &key);

/// Like merge_equivalent, but only merges branches that agree on every outcome in `keys`.
std::vector<Branch> merge_within(std::vector<Branch> branches, const std::vector<std::string> &keys, double tol = 1e-9);

}  // namespace qmcast

#endif
