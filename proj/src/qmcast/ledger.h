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

#ifndef QMCAST_LEDGER_H
#define QMCAST_LEDGER_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qmcast {

struct LedgerEntry {
    std::string party_a;
    std::string party_b;
    double ebits;
    std::string note;
};

/// Entanglement bookkeeping between pairs of parties. Each unordered pair has
/// a budget; every consumption of shared entanglement is debited against it.
class EbitLedger {
   public:
    void set_budget(const std::string &a, const std::string &b, double ebits);
    /// Throws InsufficientEbits when the pair has no budget or would overdraw it.
    void debit(const std::string &a, const std::string &b, double ebits, const std::string &note);

    double budget(const std::string &a, const std::string &b) const;
    double used(const std::string &a, const std::string &b) const;
    double total_used() const;
    double total_budget() const;
    const std::vector<LedgerEntry> &entries() const {
        return entries_;
    }

    nlohmann::json to_json() const;

   private:
    using Pair = std::pair<std::string, std::string>;
    static Pair key(const std::string &a, const std::string &b);

    std::map<Pair, double> budget_;
    std::map<Pair, double> used_;
    std::vector<LedgerEntry> entries_;
};

/// Binary entropy in bits.
double binary_entropy(double p);

}  // namespace qmcast

#endif
