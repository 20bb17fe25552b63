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

#ifndef QMCAST_CLASSICAL_CODE_H
#define QMCAST_CLASSICAL_CODE_H

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "qmcast/finite_field.h"
#include "qmcast/network.h"

namespace qmcast {

/// A solvable linear multicast code over a network.
///
/// An edge leaving the source carries <local_map(e), x> for the message x in
/// F_q^r. Any other edge carries <local_map(e), (y_1, ..., y_m)> where the y_j
/// are the symbols on the in-edges of its tail, taken in ascending edge index.
/// Target i recovers x as decoder(i) * (symbols on its in-edges).
class LinearMulticastCode {
   public:
    /// Seeded random construction. Each local map is drawn uniformly from the nonzero vectors over F_q
    /// and the candidate is kept once every target sees rank r.
    static LinearMulticastCode construct(
        const NetworkSpec &net, size_t rate, const FieldSpec &field, uint64_t seed, size_t max_attempts = 1000);

    /// Builds a code from explicit local maps, deriving global vectors and
    /// decoders. Throws UnsolvableCode when some target has rank below r.
    static LinearMulticastCode from_local_maps(
        const NetworkSpec &net, size_t rate, const FieldSpec &field, std::vector<FieldVector> local_maps);

    static LinearMulticastCode from_json(const nlohmann::json &doc);
    nlohmann::json to_json() const;

    const NetworkSpec &net() const {
        return net_;
    }
    const FieldSpec &field() const {
        return field_;
    }
    size_t rate() const {
        return rate_;
    }
    const FieldVector &local_map(size_t edge) const {
        return local_maps_.at(edge);
    }
    const FieldVector &global_vector(size_t edge) const {
        return global_.at(edge);
    }
    /// r x m_i matrix mapping the in-edge symbols of target i back to x.
    const FieldMatrix &decoder(size_t target) const {
        return decoders_.at(target);
    }

    /// Symbol carried by every edge when the source sends x.
    FieldVector encode(const FieldVector &x) const;
    FieldVector decode(size_t target, const FieldVector &incoming) const;
    /// Rank of the stacked global vectors entering target i.
    size_t target_rank(size_t target) const;

   private:
    LinearMulticastCode(NetworkSpec net, FieldSpec field, size_t rate);
    void derive_global_vectors();

    NetworkSpec net_;
    FieldSpec field_;
    size_t rate_;
    std::vector<FieldVector> local_maps_;
    std::vector<FieldVector> global_;
    std::vector<FieldMatrix> decoders_;
};

}  // namespace qmcast

#endif
