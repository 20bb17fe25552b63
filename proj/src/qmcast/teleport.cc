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

#include "qmcast/teleport.h"

#include <cmath>

#include "qmcast/error.h"
#include "qmcast/operators.h"

namespace qmcast {

std::vector<TeleportBranch> teleport_branches(
    const PureState &state,
    const std::string &src,
    const std::string &dst,
    EbitLedger &ledger,
    const std::string &from,
    const std::string &to) {
    size_t m = state.dim(src);
    std::string half = dst + "~pair";
    if (state.has(dst) || state.has(half)) {
        fail(ErrorCode::kInvalidArgument, "teleport destination '" + dst + "' already exists");
    }
    ledger.debit(from, to, std::log2((double)m), "teleport " + src + " -> " + dst);

    PureState s = state.tensor(PureState({{half, m}, {dst, m}}, max_entangled(m)));
    // Sender: half <- half - src (mod m).
    std::vector<size_t> perm(m * m);
    for (size_t x = 0; x < m; x++) {
        for (size_t y = 0; y < m; y++) {
            perm[x * m + y] = x * m + (y + m - x) % m;
        }
    }
    s.apply_permutation(perm, {src, half});

    std::vector<TeleportBranch> out;
    Measurement comp = Measurement::computational(m);
    Measurement four = Measurement::zd_fourier(m);
    for (size_t a = 0; a < m; a++) {
        PureState sa = measure_outcome(s, half, comp, a);
        for (size_t p = 0; p < m; p++) {
            PureState sp = measure_outcome(sa, src, four, p);
            sp.apply_permutation(
                [&] {
                    std::vector<size_t> shift(m);
                    for (size_t x = 0; x < m; x++) {
                        shift[x] = (x + m - a) % m;
                    }
                    return shift;
                }(),
                {dst});
            sp.apply_diagonal(pauli_z_diagonal(m, (int64_t)p), {dst});
            out.push_back({(int64_t)a, (int64_t)p, std::move(sp)});
        }
    }
    return out;
}

PureState teleport(
    const PureState &state,
    const std::string &src,
    const std::string &dst,
    EbitLedger &ledger,
    const std::string &from,
    const std::string &to,
    double tol) {
    auto branches = teleport_branches(state, src, dst, ledger, from, to);
    const PureState &ref = branches.front().state;
    double total = 0;
    for (const auto &b : branches) {
        Vec v = b.state.amplitudes_in(ref.labels());
        if (ref.norm2() > 1e-24 && overlap_up_to_phase(ref.amplitudes(), v) < 1 - tol) {
            fail(ErrorCode::kInconsistent, "teleport branches disagree");
        }
        total += b.state.norm2();
    }
    PureState merged = ref;
    if (ref.norm2() > 0) {
        merged.scale(std::sqrt(total / ref.norm2()));
    }
    return merged;
}

}  // namespace qmcast
