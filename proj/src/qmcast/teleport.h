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

#ifndef QMCAST_TELEPORT_H
#define QMCAST_TELEPORT_H

#include <string>
#include <vector>

#include "qmcast/ledger.h"
#include "qmcast/qudit_state.h"

namespace qmcast {

struct TeleportBranch {
    int64_t shift;  // computational outcome of the sender's pair half
    int64_t phase;  // Fourier outcome of the sent register
    PureState state;
};

/// Moves register `src` (dimension m) into a new register `dst` through a fresh
/// maximally entangled pair between parties `from` and `to`, debiting log2(m)
/// ebits. Returns all m^2 corrected branches; each carries weight 1/m^2 of the
/// input and equals the input with `src` renamed to `dst`.
std::vector<TeleportBranch> teleport_branches(
    const PureState &state,
    const std::string &src,
    const std::string &dst,
    EbitLedger &ledger,
    const std::string &from,
    const std::string &to);

/// Same as teleport_branches but checks that every branch agrees up to phase
/// and returns their merged state.
PureState teleport(
    const PureState &state,
    const std::string &src,
    const std::string &dst,
    EbitLedger &ledger,
    const std::string &from,
    const std::string &to,
    double tol = 1e-9);

}  // namespace qmcast

#endif
