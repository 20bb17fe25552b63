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

#ifndef QMCAST_HARNESS_H
#define QMCAST_HARNESS_H

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "qmcast/classical_code.h"
#include "qmcast/kobayashi.h"
#include "qmcast/mcast12.h"

namespace qmcast {

enum class RunKind { kGhz, kClone12, kClone13 };

const char *kind_name(RunKind k);
RunKind kind_from_name(const std::string &name);

// A run configuration document, e.g.
//   {"kind": "clone12", "network": "networks/butterfly.json",
//    "field": {"p": 2, "t": 1}, "rate": 2,
//    "params": {"a": 1, "b": 1}, "normalize": true,
//    "state": "random:7", "seed": 1}
// "network" and "code" may be inline objects or paths relative to base_dir.
struct RunConfig {
    RunKind kind = RunKind::kGhz;
    nlohmann::json network;
    std::optional<nlohmann::json> code;
    uint32_t p = 2;
    uint32_t t = 1;
    size_t rate = 1;
    nlohmann::json params = nlohmann::json::object();
    bool normalize = false;
    std::string state = "random";
    uint64_t seed = 0;
    GhzOptions ghz;
    ProtocolFault fault = ProtocolFault::kNone;

    static RunConfig from_json(const nlohmann::json &doc, const std::string &base_dir = ".");
    /// Self-contained echo: network inline, code inline if one was given.
    nlohmann::json to_json() const;
};

/// Input state from a spec: zero | plus | basis:K | random | random:SEED |
/// amps:RE[:IM],RE[:IM],... Explicit amplitudes are normalized.
Vec make_state(const std::string &spec, size_t dim, uint64_t seed);

/// Haar-random pure state of the given dimension.
Vec haar_state(size_t dim, uint64_t seed);

LinearMulticastCode resolve_code(const RunConfig &cfg);

struct RunReport {
    nlohmann::json doc;
    bool passed;
};

/// Builds (or loads) the code, runs the protocol and verifies it.
RunReport run(const RunConfig &cfg);

/// Min-cut table and, when feasible, a constructed code document.
nlohmann::json code_report(const nlohmann::json &network, uint32_t p, uint32_t t, size_t rate, uint64_t seed);

/// Fidelity curve along a one-parameter family, as CSV:
/// clone12 sweeps b in [0, 1] on the constraint surface, clone13 sweeps the
/// weights (1, u, u) for u in [0, 1].
std::string sweep_csv(const RunConfig &cfg, size_t points);

/// Replays a report's configuration and compares the result digest.
nlohmann::json verify_report(const nlohmann::json &report);

/// FNV-1a over the text, as 16 hex digits.
std::string fnv1a_hex(const std::string &text);

}  // namespace qmcast

#endif
