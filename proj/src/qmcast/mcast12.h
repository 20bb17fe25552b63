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

#ifndef QMCAST_MCAST12_H
#define QMCAST_MCAST12_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmcast/classical_code.h"
#include "qmcast/kobayashi.h"
#include "qmcast/uqcm.h"

namespace qmcast {

/// Deliberate defects used to show the verifiers can fail.
enum class ProtocolFault {
    kNone,
    kFlipUpsilonEta,
    kOmitU6Swap,
    kUncorrectedFlagPhase,
    kPerTargetFourierCorrection,
};

const char *fault_name(ProtocolFault f);
ProtocolFault fault_from_name(const std::string &name);

Mat build_upsilon(size_t r, const CloneParams12 &params, bool flip_eta = false);

struct StepUnitaries12 {
    Mat v;      // on C (control) and E
    Mat delta;  // on C and E
    Mat gamma;  // on C, E and the qubit G
    Mat theta;  // on the qubits G and T1
    Mat lambda; // on C and E
};

StepUnitaries12 build_step_unitaries(size_t r, const CloneParams12 &params);

struct Protocol2Config {
    LinearMulticastCode code;
    CloneParams12 params;
    Vec psi;
    GhzOptions ghz;
    ProtocolFault fault = ProtocolFault::kNone;
};

struct Protocol2Branch {
    std::map<std::string, int64_t> outcomes;
    size_t r;
    PureState state;  // registers E, F
    double overlap;   // against the expected two-clone branch state
};

struct Protocol2Outcome {
    std::vector<Protocol2Branch> branches;
    DensityMatrix rho_ef{{}, Mat::Identity(1, 1)};
    RunTranscript transcript;
    double min_overlap = 1;
    bool multicast_exhaustive = true;
    double multicast_min_overlap = 1;
};

Protocol2Outcome run_protocol2(const Protocol2Config &cfg);

struct Verify12Report {
    double trace_distance;
    double fidelity_e, fidelity_f;
    double expected_e, expected_f;
    double min_overlap;
    double total_probability;
    double ebits;
    bool edges_once;
    bool passed;

    nlohmann::json to_json() const;
};

Verify12Report verify_12(const Protocol2Outcome &outcome, const Protocol2Config &cfg, double tol = 1e-9);

}  // namespace qmcast

#endif
