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

#ifndef QMCAST_KOBAYASHI_H
#define QMCAST_KOBAYASHI_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmcast/branch.h"
#include "qmcast/classical_code.h"
#include "qmcast/ledger.h"
#include "qmcast/qudit_state.h"

namespace qmcast {

/// Classical side record of one protocol session.
struct RunTranscript {
    std::vector<size_t> edge_uses;
    EbitLedger ledger;
    /// Outcome tuple of every leaf that was recorded.
    std::vector<std::map<std::string, int64_t>> branch_log;

    bool edges_used_once() const;
    nlohmann::json to_json() const;
};

/// Permutation (x, y) -> (x, y + f_e(x)) on H_s (x) H_e. Throws EdgeNotAtSource
/// unless e leaves the source.
std::vector<size_t> source_edge_permutation(const LinearMulticastCode &code, size_t edge);
Mat build_source_edge_unitary(const LinearMulticastCode &code, size_t edge);

/// Permutation (y_1..y_m, y_e) -> (y_1..y_m, y_e + f_e(y)) on the in-edge
/// registers of the tail followed by H_e.
std::vector<size_t> intermediate_edge_permutation(const LinearMulticastCode &code, size_t edge);
Mat build_intermediate_edge_unitary(const LinearMulticastCode &code, size_t edge);

/// Permutation (y, x) -> (y, x + g_i(y)) on the in-edge registers of target i
/// followed by the q^r output register.
std::vector<size_t> target_decoder_permutation(const LinearMulticastCode &code, size_t target);
Mat build_target_decoder(const LinearMulticastCode &code, size_t target);

/// c = z_s + sum_e z_e global(e). Throws MissingOutcome if an edge has no outcome.
FieldVector compute_phase_correction(
    const LinearMulticastCode &code, const FieldVector &source_outcome, const std::map<size_t, FieldElement> &edge_outcomes);

struct GhzOptions {
    /// Enumerate every branch when q^(r + |E|) is at most this; otherwise sample.
    uint64_t exact_leaf_limit = uint64_t{1} << 16;
    size_t samples = 64;
    uint64_t seed = 0;
    double tol = 1e-9;
};

struct GhzLeaf {
    std::map<std::string, int64_t> outcomes;
    PureState state;
    double overlap;
};

struct GhzResult {
    std::vector<GhzLeaf> leaves;
    bool exhaustive = true;
    double min_overlap = 1;
    std::vector<size_t> edge_uses;
};

/// Distributes register `source` of `state` to new registers `outputs` (one per
/// target, in target order) so that |x> becomes |x>...|x>. Other registers of
/// the state are carried along untouched. Each leaf is compared against that
/// ideal fan-out and its overlap recorded.
GhzResult multicast_ghz(
    const PureState &state,
    const std::string &source,
    const LinearMulticastCode &code,
    const std::vector<std::string> &outputs,
    const GhzOptions &options = {});

/// Runs multicast_ghz on a branch and merges the leaves, which collapse to a
/// single branch whenever the distribution worked.
std::vector<Branch> multicast_branch(
    const Branch &branch,
    const std::string &source,
    const LinearMulticastCode &code,
    const std::vector<std::string> &outputs,
    const GhzOptions &options,
    GhzResult *stats = nullptr);

struct Protocol1Result {
    GhzResult ghz;
    RunTranscript transcript;
    std::vector<std::string> outputs;
};

/// Standalone GHZ distribution of a q^r dimensional input onto registers
/// V1..VN at the targets.
Protocol1Result run_protocol1(const LinearMulticastCode &code, const Vec &psi, const GhzOptions &options = {});

}  // namespace qmcast

#endif
