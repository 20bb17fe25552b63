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

#include "qmcast/branch.h"

#include <cmath>

namespace qmcast {

namespace {

bool same_registry(const PureState &a, const PureState &b) {
    if (a.registers().size() != b.registers().size()) {
        return false;
    }
    for (const auto &r : a.registers()) {
        if (!b.has(r.label) || b.dim(r.label) != r.dim) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Branch> merge_equivalent(std::vector<Branch> branches, double tol, double drop) {
    struct Group {
        Branch rep;
        double weight;
    };
    std::vector<Group> groups;
    for (auto &b : branches) {
        double w = b.state.norm2();
        if (w < drop) {
            continue;
        }
        bool placed = false;
        for (auto &g : groups) {
            if (!same_registry(g.rep.state, b.state)) {
                continue;
            }
            Vec other = b.state.amplitudes_in(g.rep.state.labels());
            if (overlap_up_to_phase(g.rep.state.amplitudes(), other) >= 1 - tol) {
                g.weight += w;
                for (auto &[k, v] : g.rep.outcomes) {
                    auto it = b.outcomes.find(k);
                    if (it == b.outcomes.end() || it->second != v) {
                        v = kMixedOutcome;
                    }
                }
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({std::move(b), w});
        }
    }
    std::vector<Branch> out;
    for (auto &g : groups) {
        g.rep.state.scale(std::sqrt(g.weight / g.rep.state.norm2()));
        out.push_back(std::move(g.rep));
    }
    return out;
}

std::vector<Branch> merge_within(std::vector<Branch> branches, const std::vector<std::string> &keys, double tol) {
    std::map<std::vector<int64_t>, std::vector<Branch>> groups;
    for (auto &b : branches) {
        std::vector<int64_t> id;
        for (const auto &k : keys) {
            id.push_back(b.outcomes.at(k));
        }
        groups[id].push_back(std::move(b));
    }
    std::vector<Branch> out;
    for (auto &[id, g] : groups) {
        for (auto &b : merge_equivalent(std::move(g), tol)) {
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::vector<Branch> measure_branches(
    const std::vector<Branch> &branches, const std::string &reg, const Measurement &m, const std::string &key) {
    std::vector<Branch> out;
    for (const auto &b : branches) {
        for (auto &mb : measure(b.state, reg, m)) {
            if (mb.probability < 1e-24) {
                continue;
            }
            Branch nb{std::move(mb.state), b.outcomes};
            nb.outcomes[key] = mb.outcome;
            out.push_back(std::move(nb));
        }
    }
    return out;
}

}  // namespace qmcast
