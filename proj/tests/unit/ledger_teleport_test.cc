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

#include "bridge.h"
#include "qmcast/branch.h"
#include "qmcast/error.h"
#include "qmcast/ledger.h"
#include "qmcast/operators.h"
#include "qmcast/teleport.h"

using namespace qmcast;

TEST(LedgerTest, BudgetsAreSymmetricAndEnforced) {
    EbitLedger l;
    l.set_budget("t1", "t2", 2);
    EXPECT_EQ(l.budget("t2", "t1"), 2);
    l.debit("t2", "t1", 1.5, "first");
    EXPECT_DOUBLE_EQ(l.used("t1", "t2"), 1.5);
    try {
        l.debit("t1", "t2", 1, "too much");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInsufficientEbits);
    }
    EXPECT_THROW(l.debit("t1", "t3", 0.1, "no budget"), Error);
    EXPECT_DOUBLE_EQ(l.total_used(), 1.5);
    EXPECT_DOUBLE_EQ(l.total_budget(), 2);
    EXPECT_EQ(l.entries().size(), 1u);
    EXPECT_EQ(l.to_json()["entries"].size(), 1u);
}

TEST(LedgerTest, BinaryEntropy) {
    EXPECT_DOUBLE_EQ(binary_entropy(0), 0);
    EXPECT_DOUBLE_EQ(binary_entropy(1), 0);
    EXPECT_NEAR(binary_entropy(0.5), 1, 1e-15);
    EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-15);
}

TEST(TeleportTest, MovesStateAndEntanglement) {
    for (size_t d : {2, 3, 4}) {
        // Register A is entangled with a reference R; teleporting A must preserve the joint state.
        PureState s({{"R", d}, {"A", d}}, bridge::haar(d * d, 10 + d));
        EbitLedger l;
        l.set_budget("u", "v", std::log2((double)d));
        PureState out = teleport(s, "A", "A2", l, "u", "v");
        EXPECT_FALSE(out.has("A"));
        Vec got = out.amplitudes_in({"R", "A2"});
        EXPECT_NEAR(overlap_up_to_phase(got, s.amplitudes()), 1, 1e-12);
        EXPECT_NEAR(out.norm2(), 1, 1e-12);
        EXPECT_NEAR(l.used("u", "v"), std::log2((double)d), 1e-12);
    }
}

TEST(TeleportTest, EveryBranchIsCorrectable) {
    size_t d = 3;
    PureState s({{"R", 2}, {"A", d}}, bridge::haar(2 * d, 20));
    EbitLedger l;
    l.set_budget("u", "v", 10);
    auto branches = teleport_branches(s, "A", "A2", l, "u", "v");
    EXPECT_EQ(branches.size(), d * d);
    double total = 0;
    for (const auto &b : branches) {
        total += b.state.norm2();
        EXPECT_NEAR(b.state.norm2(), 1.0 / (double)(d * d), 1e-12);
    }
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(TeleportTest, NeedsBudget) {
    PureState s({{"A", 2}}, bridge::haar(2, 1));
    EbitLedger l;
    EXPECT_THROW(teleport(s, "A", "B", l, "u", "v"), Error);
}

TEST(BranchTest, MergeCombinesParallelStates) {
    PureState a({{"A", 2}}, bridge::haar(2, 3));
    PureState b = a;
    b.scale(std::polar(0.5, 0.7));
    std::vector<Branch> in{{a, {{"x", 0}, {"y", 1}}}, {b, {{"x", 1}, {"y", 1}}}};
    auto out = merge_equivalent(in);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_NEAR(out[0].probability(), 1.25, 1e-12);
    EXPECT_EQ(out[0].outcomes.at("x"), kMixedOutcome);
    EXPECT_EQ(out[0].outcomes.at("y"), 1);
}

TEST(BranchTest, MergeKeepsDistinctStates) {
    PureState a = PureState::basis({{"A", 2}}, {0}), b = PureState::basis({{"A", 2}}, {1});
    auto out = merge_equivalent({{a, {}}, {b, {}}});
    EXPECT_EQ(out.size(), 2u);
}

TEST(BranchTest, MeasureAndMergeWithinKeys) {
    PureState s({{"A", 2}, {"B", 2}}, max_entangled(2));
    auto br = measure_branches({{s, {}}}, "A", Measurement::computational(2), "a");
    ASSERT_EQ(br.size(), 2u);
    for (const auto &b : br) {
        EXPECT_NEAR(b.probability(), 0.5, 1e-14);
        EXPECT_TRUE(b.outcomes.count("a"));
    }
    // Different outcomes of the grouping key never merge.
    EXPECT_EQ(merge_within(br, {"a"}).size(), 2u);
}
