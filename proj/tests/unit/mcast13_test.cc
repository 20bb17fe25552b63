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

#include <gtest/gtest.h>

#include <set>

#include "bridge.h"
#include "qmcast/error.h"
#include "qmcast/mcast13.h"
#include "qmcast/operators.h"

using namespace qmcast;

namespace {

Protocol3Config config(uint32_t p, std::array<double, 3> w, uint64_t seed) {
    auto spec = NetworkSpec::load(std::string(QMCAST_NETWORK_DIR) + "/tree3.json");
    auto code = LinearMulticastCode::construct(spec, 1, FieldSpec::make(p, 1), seed);
    return {code, CloneParams13::from_ratio(w[0], w[1], w[2], p), bridge::haar(p, seed + 500), {},
            ProtocolFault::kNone};
}

}  // namespace

TEST(Mcast13Test, ResourceDimension) {
    EXPECT_EQ(resource_dim(2), 3u);
    EXPECT_EQ(resource_dim(3), 3u);
    EXPECT_EQ(resource_dim(5), 5u);
}

TEST(Mcast13Test, PinnedPermutationIsBijective) {
    auto perm = pinned_permutation({2, 0}, 4);
    std::set<size_t> s(perm.begin(), perm.end());
    EXPECT_EQ(s.size(), 4u);
}

TEST(Mcast13Test, StepUnitariesAreUnitary) {
    auto p = CloneParams13::from_ratio(0.3, 0.5, 0.8, 3);
    for (size_t r = 0; r < 3; r++) {
        for (size_t s = 0; s < 3; s++) {
            auto u = build_step_unitaries_13(r, s, p);
            for (const Mat *m : {&u.u5, &u.u6, &u.u7, &u.u8}) {
                EXPECT_TRUE(is_unitary(*m, 1e-10)) << r << s;
            }
            if (r != s) {
                EXPECT_TRUE(is_unitary(build_u2(r, s, p), 1e-10));
            } else {
                EXPECT_THROW(build_u2(r, s, p), Error);
            }
            Vec u9 = build_u9(r, s, 3, 1);
            for (Eigen::Index i = 0; i < u9.size(); i++) {
                EXPECT_NEAR(std::abs(u9[i]), 1, 1e-12);
            }
        }
        EXPECT_TRUE(is_unitary(build_u2_prime(r, p), 1e-10));
    }
}

TEST(Mcast13Test, ResourcesDebitExpectedEntanglement) {
    auto p = CloneParams13::from_ratio(1, 1, 1, 2);
    EbitLedger l;
    std::vector<std::string> t{"t1", "t2", "t3"};
    l.set_budget("t1", "t2", 10);
    l.set_budget("t1", "t3", 10);
    auto res = prepare_target_resources(true, p, l, t);
    EXPECT_EQ(res.m_state.labels().size(), 3u);
    EXPECT_NEAR(res.m_state.norm2(), 1, 1e-12);
    EXPECT_NEAR(res.n_state.norm2(), 1, 1e-12);
}

TEST(Mcast13Test, TreeRunReproducesChannel) {
    auto cfg = config(2, {0.9, 0.4, 0.2}, 3);
    auto out = run_protocol3(cfg);
    auto rep = verify_13(out, cfg);
    EXPECT_TRUE(rep.passed) << rep.to_json().dump();
    auto ref = oracle::channel13(bridge::to_cvec(cfg.psi), cfg.params.alpha(), cfg.params.beta(), cfg.params.gamma());
    EXPECT_LT(oracle::trace_distance(bridge::to_cmat(out.rho_m), ref), 1e-9);
    EXPECT_NEAR(rep.ebits_distinct, 2 + 4 * std::log2(3.0), 1e-9);
    EXPECT_LE(rep.ebits_equal, 2 + 4 * std::log2(3.0) + 1e-9);
    EXPECT_LE(rep.max_p2_probability, 1e-20);
}

TEST(Mcast13Test, SymmetricQubitPoint) {
    auto cfg = config(2, {1, 1, 1}, 4);
    auto rep = verify_13(run_protocol3(cfg), cfg);
    for (double f : rep.fidelities) {
        EXPECT_NEAR(f, 7.0 / 9.0, 1e-9);
    }
}

TEST(Mcast13Test, OmittedSwapIsDetected) {
    auto cfg = config(2, {0.5, 0.3, 0.7}, 5);
    cfg.fault = ProtocolFault::kOmitU6Swap;
    auto rep = verify_13(run_protocol3(cfg), cfg);
    EXPECT_FALSE(rep.passed);
    EXPECT_GT(rep.trace_distance, 1e-3);
}

TEST(Mcast13Test, ForeignFaultRejected) {
    auto cfg = config(2, {1, 1, 1}, 0);
    cfg.fault = ProtocolFault::kFlipUpsilonEta;
    EXPECT_THROW(run_protocol3(cfg), Error);
}
