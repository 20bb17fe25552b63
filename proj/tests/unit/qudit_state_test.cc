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
#include "qmcast/operators.h"
#include "qmcast/qudit_state.h"

using namespace qmcast;

namespace {

PureState random_pair(size_t da, size_t db, uint64_t seed) {
    return PureState({{"A", da}, {"B", db}}, bridge::haar(da * db, seed));
}

}  // namespace

TEST(PureStateTest, BasisIndexIsLastRegisterFastest) {
    PureState s = PureState::basis({{"A", 2}, {"B", 3}}, {1, 2});
    EXPECT_EQ(s.total_dim(), 6u);
    EXPECT_NEAR(std::abs(s.amplitudes()[5]), 1, 1e-15);
    EXPECT_EQ(s.position("B"), 1u);
    EXPECT_EQ(s.dim("B"), 3u);
    EXPECT_FALSE(s.has("C"));
}

TEST(PureStateTest, ConstructorValidates) {
    EXPECT_THROW(PureState({{"A", 2}}, Vec::Zero(3)), Error);
    EXPECT_THROW(PureState({{"A", 2}, {"A", 2}}, Vec::Zero(4)), Error);
}

TEST(PureStateTest, ReorderingAmplitudes) {
    PureState s = random_pair(2, 3, 1);
    Vec ba = s.amplitudes_in({"B", "A"});
    for (size_t a = 0; a < 2; a++) {
        for (size_t b = 0; b < 3; b++) {
            EXPECT_EQ(ba[(Eigen::Index)(b * 2 + a)], s.amplitudes()[(Eigen::Index)(a * 3 + b)]);
        }
    }
}

TEST(PureStateTest, ApplyMatchesKroneckerProduct) {
    PureState s = random_pair(3, 3, 2);
    Mat x = pauli_x(3);
    PureState t = s;
    t.apply(x, {"B"});
    Mat full = Mat::Zero(9, 9);
    for (Eigen::Index a = 0; a < 3; a++) {
        full.block(3 * a, 3 * a, 3, 3) = x;
    }
    EXPECT_LT((t.amplitudes() - full * s.amplitudes()).norm(), 1e-14);
    EXPECT_THROW(t.apply(Mat::Ones(3, 3), {"A"}), Error);
    EXPECT_THROW(t.apply(x, {"Z"}), Error);
}

TEST(PureStateTest, PermutationAndDiagonalAgreeWithDenseForms) {
    PureState s = random_pair(2, 3, 3);
    std::vector<size_t> perm{5, 0, 1, 2, 3, 4};
    PureState a = s, b = s;
    a.apply_permutation(perm, {"A", "B"});
    b.apply(permutation_matrix(perm), {"A", "B"});
    EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-14);

    Vec diag = pauli_z_diagonal(3, 1);
    a = s;
    b = s;
    a.apply_diagonal(diag, {"B"});
    b.apply(pauli_z(3), {"B"});
    EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-14);
}

TEST(PureStateTest, IsometryWritesOutputsFirst) {
    PureState s({{"A", 2}}, bridge::haar(2, 4));
    Mat copy = Mat::Zero(4, 2);
    copy(0, 0) = 1;
    copy(3, 1) = 1;
    s.apply_isometry(copy, {"A"}, {{"X", 2}, {"Y", 2}});
    EXPECT_EQ(s.labels(), (std::vector<std::string>{"X", "Y"}));
    EXPECT_NEAR(s.norm2(), 1, 1e-14);
    EXPECT_THROW(s.apply_isometry(Mat::Ones(4, 2), {"X"}, {{"P", 2}, {"Q", 2}}), Error);
}

TEST(PureStateTest, ResizeOnlyDropsEmptyLevels) {
    PureState s = PureState::basis({{"A", 3}}, {1});
    s.resize_register("A", 2);
    EXPECT_EQ(s.dim("A"), 2u);
    s.resize_register("A", 4);
    EXPECT_EQ(s.dim("A"), 4u);
    EXPECT_NEAR(std::abs(s.amplitudes()[1]), 1, 1e-15);
    try {
        s.resize_register("A", 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kSupportViolation);
    }
}

TEST(MeasurementTest, BranchProbabilitiesSumToNorm) {
    PureState s = random_pair(4, 2, 5);
    FieldSpec f = FieldSpec::make(2, 2);
    for (const auto &m : {Measurement::computational(4), Measurement::zd_fourier(4), Measurement::gf_fourier(f, 1),
                          Measurement::pk_family(4)}) {
        double total = 0;
        for (const auto &b : measure(s, "A", m)) {
            total += b.probability;
            EXPECT_NEAR(b.state.norm2(), b.probability, 1e-14);
        }
        EXPECT_NEAR(total, 1, 1e-12) << m.name();
    }
}

TEST(MeasurementTest, BasesAreOrthonormal) {
    FieldSpec f = FieldSpec::make(3, 1);
    for (const auto &m : {Measurement::zd_fourier(5), Measurement::gf_fourier(f, 2)}) {
        Mat u(m.dim(), m.dim());
        for (size_t k = 0; k < m.outcomes().size(); k++) {
            u.col((Eigen::Index)k) = m.outcomes()[k].vector;
        }
        EXPECT_TRUE(is_unitary(u, 1e-12)) << m.name();
    }
}

TEST(MeasurementTest, GfFourierUsesFieldTrace) {
    // Over a prime field the trace is the identity, so the basis is the plain DFT with omega = e^{-2 pi i/p}.
    FieldSpec f = FieldSpec::make(5, 1);
    auto m = Measurement::gf_fourier(f, 1);
    const double pi = std::acos(-1.0);
    for (size_t z = 0; z < 5; z++) {
        for (size_t x = 0; x < 5; x++) {
            cplx want = std::polar(1 / std::sqrt(5.0), -2 * pi * (double)(x * z % 5) / 5);
            EXPECT_LT(std::abs(m.outcomes()[z].vector[(Eigen::Index)x] - want), 1e-14);
        }
    }
}

TEST(MeasurementTest, PkFamilyKeepsRestOfSpace) {
    PureState s = PureState::basis({{"A", 3}}, {2});
    auto branches = measure(s, "A", Measurement::pk_family(3));
    ASSERT_FALSE(branches.empty());
    for (const auto &b : branches) {
        if (b.outcome == 2) {
            EXPECT_TRUE(b.state.has("A"));
            EXPECT_NEAR(b.probability, 1, 1e-14);
        } else {
            EXPECT_NEAR(b.probability, 0, 1e-14);
        }
    }
}

TEST(DensityMatrixTest, PartialTraceOfBellPair) {
    PureState bell({{"A", 3}, {"B", 3}}, max_entangled(3));
    DensityMatrix rho = partial_trace(bell, {"A"});
    EXPECT_LT((rho.matrix() - Mat::Identity(3, 3) / 3.0).norm(), 1e-14);
    EXPECT_NEAR(rho.trace().real(), 1, 1e-14);
}

TEST(DensityMatrixTest, PartialTraceMatchesOracle) {
    PureState s({{"A", 2}, {"B", 2}, {"M", 3}}, bridge::haar(12, 6));
    auto mine = bridge::to_cmat(partial_trace(s, {"A", "B"}));
    auto ref = oracle::trace_tail(bridge::to_cvec(s.amplitudes()), 4, 3);
    EXPECT_LT(oracle::trace_distance(mine, ref), 1e-13);
}

TEST(DensityMatrixTest, TraceDistanceAndFidelity) {
    Vec psi = bridge::haar(3, 7), phi = bridge::haar(3, 8);
    auto rp = DensityMatrix::from_pure(PureState({{"A", 3}}, psi), {"A"});
    auto rf = DensityMatrix::from_pure(PureState({{"A", 3}}, phi), {"A"});
    double ov = std::norm(psi.dot(phi));
    // Pure states: T = sqrt(1 - |<psi|phi>|^2)
    EXPECT_NEAR(trace_distance(rp, rf), std::sqrt(1 - ov), 1e-12);
    EXPECT_NEAR(fidelity(rf, psi), ov, 1e-12);
    EXPECT_NEAR(trace_distance(rp, rp), 0, 1e-14);
    EXPECT_NEAR(oracle::trace_distance(bridge::to_cmat(rp), bridge::to_cmat(rf)), std::sqrt(1 - ov), 1e-10);
}

TEST(DensityMatrixTest, BranchMixture) {
    PureState a = PureState::basis({{"A", 2}}, {0}), b = PureState::basis({{"A", 2}}, {1});
    a.scale(std::sqrt(0.25));
    b.scale(std::sqrt(0.75));
    auto rho = DensityMatrix::from_branches({a, b}, {"A"});
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.75, 1e-15);
    EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0, 1e-15);
    EXPECT_GE(rho.min_eigenvalue(), -1e-15);
}

TEST(DensityMatrixTest, OverlapUpToPhase) {
    Vec v = bridge::haar(4, 9);
    EXPECT_NEAR(overlap_up_to_phase(v, v * std::polar(2.0, 1.3)), 1, 1e-14);
    EXPECT_EQ(overlap_up_to_phase(v, Vec::Zero(4)), 0);
}
