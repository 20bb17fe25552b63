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

#include "qmcast/ledger.h"

#include <cmath>

#include "qmcast/error.h"

namespace qmcast {

EbitLedger::Pair EbitLedger::key(const std::string &a, const std::string &b) {
    return a < b ? Pair{a, b} : Pair{b, a};
}

void EbitLedger::set_budget(const std::string &a, const std::string &b, double ebits) {
    if (a == b) {
        fail(ErrorCode::kInvalidArgument, "a party cannot share entanglement with itself");
    }
    budget_[key(a, b)] = ebits;
}

void EbitLedger::debit(const std::string &a, const std::string &b, double ebits, const std::string &note) {
    Pair k = key(a, b);
    auto it = budget_.find(k);
    if (it == budget_.end()) {
        fail(ErrorCode::kInsufficientEbits, "parties '" + a + "' and '" + b + "' share no entanglement");
    }
    double after = used_[k] + ebits;
    if (after > it->second + 1e-12) {
        fail(ErrorCode::kInsufficientEbits,
             "'" + a + "'-'" + b + "' would use " + std::to_string(after) + " ebits of a " +
                 std::to_string(it->second) + " budget");
    }
    used_[k] = after;
    entries_.push_back({a, b, ebits, note});
}

double EbitLedger::budget(const std::string &a, const std::string &b) const {
    auto it = budget_.find(key(a, b));
    return it == budget_.end() ? 0.0 : it->second;
}

double EbitLedger::used(const std::string &a, const std::string &b) const {
    auto it = used_.find(key(a, b));
    return it == used_.end() ? 0.0 : it->second;
}

double EbitLedger::total_used() const {
    double s = 0;
    for (const auto &[k, v] : used_) {
        s += v;
    }
    return s;
}

double EbitLedger::total_budget() const {
    double s = 0;
    for (const auto &[k, v] : budget_) {
        s += v;
    }
    return s;
}

nlohmann::json EbitLedger::to_json() const {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &[k, v] : budget_) {
        pairs.push_back({{"parties", {k.first, k.second}}, {"budget", v}, {"used", used(k.first, k.second)}});
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : entries_) {
        entries.push_back({{"parties", {e.party_a, e.party_b}}, {"ebits", e.ebits}, {"note", e.note}});
    }
    return {{"pairs", pairs},
            {"entries", entries},
            {"resource_count", entries_.size()},
            {"total_used", total_used()},
            {"total_budget", total_budget()}};
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1) {
        return 0;
    }
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace qmcast
