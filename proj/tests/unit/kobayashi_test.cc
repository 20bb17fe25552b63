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
#include "qmcast/kobayashi.h"

using namespace qmcast;

namespace {

LinearMulticastCode make_code(const std::string &net, uint32_t p, uint32_t t, size_t rate, uint64_t seed = 0) {
    auto spec = NetworkSpec::load(std::string(QMCAST_NETWORK_DIR) + "/" + net + ".json");
    return LinearMulticastCode::construct(spec, rate, FieldSpec::make(p, t), seed);
}

bool is_permutation(const std::vector<size_t> &perm) {
    std::set<size_t> s(perm.begin(), perm.end());
    return s.size() == perm.size() && (perm.empty() || *s.rbegin() == perm.size() - 1);
}

double ghz_overlap(const GhzLeaf &leaf, const std::vector<std::string> &outputs, const Vec &psi) {
    auto got = bridge::to_cvec(leaf.state.amplitudes_in(outputs));
    return oracle::overlap(got, oracle::ghz_vector(bridge::to_cvec(psi), outputs.size()));
}

}  // namespace

TEST(KobayashiTest, EdgeMapsArePermutations) {
    auto code = make_code("butterfly", 3, 1, 2, 1);
    for (size_t e = 0; e < code.net().edges().size(); e++) {
        const auto &edge = code.net().edges()[e];
        auto perm = edge.tail == code.net().source() ? source_edge_permutation(code, e)
                                                      : intermediate_edge_permutation(code, e);
        EXPECT_TRUE(is_permutation(perm)) << "edge " << e;
    }
    for (size_t t = 0; t < 2; t++) {
        EXPECT_TRUE(is_permutation(target_decoder_permutation(code, t)));
    }
}

TEST(KobayashiTest, GhzOnTreesEveryBranch) {
    for (uint32_t p : {2, 3, 5}) {
        auto code = make_code("tree3", p, 1, 1);
        Vec psi = bridge::haar(p, p);
        auto res = run_protocol1(code, psi);
        EXPECT_TRUE(res.ghz.exhaustive);
        double total = 0;
        for (const auto &leaf : res.ghz.leaves) {
            total += leaf.state.norm2();
            EXPECT_GE(ghz_overlap(leaf, res.outputs, psi), 1 - 1e-9);
        }
        EXPECT_NEAR(total, 1, 1e-10);
        EXPECT_TRUE(res.transcript.edges_used_once());
    }
}

TEST(KobayashiTest, GhzOnButterflyOverExtensionField) {
    auto code = make_code("butterfly", 2, 2, 1, 3);
    Vec psi = bridge::haar(4, 77);
    auto res = run_protocol1(code, psi);
    ASSERT_FALSE(res.ghz.leaves.empty());
    for (const auto &leaf : res.ghz.leaves) {
        EXPECT_GE(ghz_overlap(leaf, res.outputs, psi), 1 - 1e-9);
    }
    EXPECT_EQ(res.ghz.edge_uses, std::vector<size_t>(9, 1));
}

TEST(KobayashiTest, SampledWalkStillLandsOnGhz) {
    auto code = make_code("butterfly", 2, 1, 2, 1);
    GhzOptions opt;
    opt.exact_leaf_limit = 4;
    opt.samples = 16;
    opt.seed = 5;
    Vec psi = bridge::haar(4, 3);
    auto res = run_protocol1(code, psi, opt);
    EXPECT_FALSE(res.ghz.exhaustive);
    EXPECT_EQ(res.ghz.leaves.size(), 16u);
    for (const auto &leaf : res.ghz.leaves) {
        EXPECT_GE(ghz_overlap(leaf, res.outputs, psi), 1 - 1e-9);
    }
}

TEST(KobayashiTest, RejectsWrongInputDimension) {
    auto code = make_code("tree2", 3, 1, 1);
    EXPECT_THROW(run_protocol1(code, Vec::Ones(2) / std::sqrt(2.0)), Error);
}
