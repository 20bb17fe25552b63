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
#include "qmcast/error.h"
#include "qmcast/uqcm.h"

using namespace qmcast;

TEST(CloneParamsTest, ConstraintSurface) {
    auto p = CloneParams12::from_ratio(2, 1, 3);
    EXPECT_NEAR(p.a() * p.a() + p.b() * p.b() + 2 * p.a() * p.b() / 3, 1, 1e-15);
    EXPECT_NEAR(p.cos_eta() * p.cos_eta() + p.sin_eta() * p.sin_eta(), 1, 1e-14);
    EXPECT_NO_THROW(CloneParams12::exact(1, 0, 4));
    try {
        CloneParams12::exact(1, 1, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kConstraintViolated);
    }
    try {
        CloneParams12::from_ratio(0, 0, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateParams);
    }
    EXPECT_THROW(CloneParams13::exact(-0.1, 1, 0, 2), Error);
    EXPECT_THROW(CloneParams13::from_ratio(0, 0, 0, 3), Error);
    auto q = CloneParams13::from_ratio(1, 2, 3, 4);
    auto w = oracle::normalize13(1, 2, 3, 4);
    EXPECT_NEAR(q.alpha(), w[0], 1e-15);
    EXPECT_NEAR(q.gamma(), w[2], 1e-15);
}

TEST(UqcmTest, IsometriesAreIsometries) {
    for (size_t d : {2, 3}) {
        Mat u = isometry_12(CloneParams12::from_ratio(0.3, 0.8, d));
        EXPECT_LT((u.adjoint() * u - Mat::Identity(d, d)).norm(), 1e-13);
        Mat v = isometry_13(CloneParams13::from_ratio(0.2, 0.5, 0.9, d));
        EXPECT_LT((v.adjoint() * v - Mat::Identity(d, d)).norm(), 1e-13);
    }
}

TEST(UqcmTest, Channel12MatchesReference) {
    for (size_t d : {2, 3, 4}) {
        for (uint64_t seed = 0; seed < 3; seed++) {
            auto [a, b] = oracle::normalize12(0.3 + 0.2 * (double)seed, 0.7, d);
            Vec psi = bridge::haar(d, 100 * d + seed);
            auto mine = bridge::to_cmat(channel_12_oracle(psi, CloneParams12::exact(a, b, d)));
            auto ref = oracle::channel12(bridge::to_cvec(psi), a, b);
            EXPECT_LT(oracle::trace_distance(mine, ref), 1e-12);
        }
    }
}

TEST(UqcmTest, Channel13MatchesReference) {
    for (size_t d : {2, 3}) {
        auto w = oracle::normalize13(0.4, 0.1, 0.9, d);
        Vec psi = bridge::haar(d, 7 + d);
        auto mine = bridge::to_cmat(channel_13_oracle(psi, CloneParams13::exact(w[0], w[1], w[2], d)));
        auto ref = oracle::channel13(bridge::to_cvec(psi), w[0], w[1], w[2]);
        EXPECT_LT(oracle::trace_distance(mine, ref), 1e-12);
    }
}

TEST(UqcmTest, AnalyticFidelitiesMatchReferenceMarginals) {
    for (size_t d : {2, 3, 5}) {
        auto [a, b] = oracle::normalize12(0.9, 0.35, d);
        auto p = CloneParams12::exact(a, b, d);
        auto [fe, ff] = analytic_fidelities_12(p);
        auto psi = bridge::to_cvec(bridge::haar(d, d));
        auto rho = oracle::channel12(psi, a, b);
        EXPECT_NEAR(fe, oracle::marginal_fidelity(rho, d, 2, 0, psi), 1e-12);
        EXPECT_NEAR(ff, oracle::marginal_fidelity(rho, d, 2, 1, psi), 1e-12);

        auto w = oracle::normalize13(0.2, 0.6, 0.3, d);
        auto f3 = analytic_fidelities_13(CloneParams13::exact(w[0], w[1], w[2], d));
        auto rho3 = oracle::channel13(psi, w[0], w[1], w[2]);
        for (size_t k = 0; k < 3; k++) {
            EXPECT_NEAR(f3[k], oracle::marginal_fidelity(rho3, d, 3, k, psi), 1e-12) << "d=" << d << " k=" << k;
        }
    }
}

TEST(UqcmTest, SymmetricPoints) {
    auto [fe, ff] = analytic_fidelities_12(CloneParams12::from_ratio(1, 1, 2));
    EXPECT_NEAR(fe, 5.0 / 6.0, 1e-12);
    EXPECT_NEAR(ff, 5.0 / 6.0, 1e-12);
    for (double f : analytic_fidelities_13(CloneParams13::from_ratio(1, 1, 1, 2))) {
        EXPECT_NEAR(f, 7.0 / 9.0, 1e-12);
    }
}

TEST(UqcmTest, BranchStatesAreAncillaSlices) {
    for (size_t d : {2, 3}) {
        auto [a, b] = oracle::normalize12(0.5, 0.8, d);
        Vec psi = bridge::haar(d, 40 + d);
        auto full = oracle::clone12_vector(bridge::to_cvec(psi), a, b);
        for (size_t r = 0; r < d; r++) {
            auto mine = bridge::to_cvec(branch_state_12(psi, CloneParams12::exact(a, b, d), r));
            auto ref = oracle::fix_tail(full, d, r);
            EXPECT_NEAR(oracle::overlap(mine, ref), 1, 1e-12);
            EXPECT_NEAR(oracle::norm2(mine), oracle::norm2(ref), 1e-12);
        }
        auto w = oracle::normalize13(0.7, 0.2, 0.5, d);
        auto full3 = oracle::clone13_vector(bridge::to_cvec(psi), w[0], w[1], w[2]);
        auto p3 = CloneParams13::exact(w[0], w[1], w[2], d);
        for (size_t r = 0; r < d; r++) {
            for (size_t s = 0; s < d; s++) {
                auto mine = bridge::to_cvec(branch_state_13(psi, p3, r, s));
                auto ref = oracle::fix_tail(full3, d * d, r * d + s);
                EXPECT_NEAR(oracle::overlap(mine, ref), 1, 1e-12) << r << s;
            }
        }
    }
}

TEST(UqcmTest, CloneFidelitiesOfProductState) {
    Vec psi = bridge::haar(3, 1);
    PureState s({{"A", 3}, {"B", 3}}, Vec::Zero(9));
    Vec prod(9);
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            prod[i * 3 + j] = psi[i] * (j == 0 ? 1.0 : 0.0);
        }
    }
    auto rho = DensityMatrix::from_pure(PureState({{"A", 3}, {"B", 3}}, prod), {"A", "B"});
    auto f = clone_fidelities(rho, psi);
    EXPECT_NEAR(f[0], 1, 1e-14);
    EXPECT_NEAR(f[1], std::norm(psi[0]), 1e-14);
}

TEST(UqcmTest, DimensionMismatch) {
    EXPECT_THROW(channel_12_oracle(Vec::Ones(3), CloneParams12::from_ratio(1, 1, 2)), Error);
}
