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

#ifndef QMCAST_MCAST13_H
#define QMCAST_MCAST13_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmcast/classical_code.h"
#include "qmcast/kobayashi.h"
#include "qmcast/mcast12.h"
#include "qmcast/uqcm.h"

namespace qmcast {

/// Dimension of the M and N registers: they must hold the values 0, 1, 2 of
/// the shared resource states as well as any clone value below d.
size_t resource_dim(size_t d);

/// U2 for r != s. Throws DegenerateParams if a defining vector vanishes.
Mat build_u2(size_t r, size_t s, const CloneParams13 &params);
/// U2' for the r = s outcome.
Mat build_u2_prime(size_t r, const CloneParams13 &params);

/// A permutation of {0..m-1} pinned at the leading positions; the rest of
/// the domain is matched to the unused values in increasing order.
std::vector<size_t> pinned_permutation(const std::vector<size_t> &pinned, size_t m);

struct StepUnitaries13 {
    size_t d;
    size_t m;        // M and N register dimension
    size_t n_width;  // dimension N registers are cut to before they move (3, or 2 when r = s)
    Mat u5;          // on D, M_i
    Mat u6;          // on D, M_i, N_i
    Mat u7;          // on D, M_i
    Mat u8;          // on N1, N2, N3 at width n_width
};

/// r == s yields the primed family.
StepUnitaries13 build_step_unitaries_13(size_t r, size_t s, const CloneParams13 &params, bool omit_swap = false);
/// Diagonal of U9 on D: (-1)^k on |r> and |s>.
Vec build_u9(size_t r, size_t s, size_t d, int64_t k);

struct TargetResources {
    PureState m_state;  // M1 M2 M3, each of dimension resource_dim(d)
    PureState n_state;  // N1 N2 N3
};

/// Prepares the shared M and N states at t1 and teleports the t2 and t3
/// shares out, debiting `ledger`.
TargetResources prepare_target_resources(
    bool distinct, const CloneParams13 &params, EbitLedger &ledger, const std::vector<std::string> &targets);

struct Protocol3Config {
    LinearMulticastCode code;
    CloneParams13 params;
    Vec psi;
    GhzOptions ghz;
    ProtocolFault fault = ProtocolFault::kNone;
};

struct Protocol3Branch {
    std::map<std::string, int64_t> outcomes;
    size_t r, s;
    PureState state;  // M1 M2 M3
    double overlap;
};

struct Protocol3Outcome {
    std::vector<Protocol3Branch> branches;
    DensityMatrix rho_m{{}, Mat::Identity(1, 1)};
    RunTranscript transcript;
    /// Ebits consumed along the r != s and r = s paths.
    std::map<std::string, EbitLedger> path_ledgers;
    double min_overlap = 1;
    double max_p2_probability = 0;
    /// Weight found outside the clone levels of M1 M2 M3 (zero for a healthy run).
    double leakage = 0;
    bool multicast_exhaustive = true;
    double multicast_min_overlap = 1;
};

Protocol3Outcome run_protocol3(const Protocol3Config &cfg);

struct Verify13Report {
    double trace_distance;
    std::array<double, 3> fidelities;
    std::array<double, 3> expected;
    double min_overlap;
    double total_probability;
    double ebits_distinct;
    double ebits_equal;
    double max_p2_probability;
    double leakage;
    bool edges_once;
    bool passed;

    nlohmann::json to_json() const;
};

Verify13Report verify_13(const Protocol3Outcome &outcome, const Protocol3Config &cfg, double tol = 1e-9);

}  // namespace qmcast

#endif
