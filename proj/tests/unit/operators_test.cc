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

#include "qmcast/error.h"
#include "qmcast/operators.h"

using namespace qmcast;

TEST(OperatorsTest, WeylRelation) {
    // Z X = omega X Z with omega = e^{2 pi i/d}
    const double pi = std::acos(-1.0);
    for (size_t d : {2, 3, 5}) {
        Mat x = pauli_x(d), z = pauli_z(d);
        cplx w = std::polar(1.0, 2 * pi / (double)d);
        EXPECT_LT((z * x - w * x * z).norm(), 1e-13) << d;
        EXPECT_LT((pauli_x(d, (int64_t)d) - Mat::Identity(d, d)).norm(), 1e-14);
        EXPECT_LT((pauli_x(d, -1) * x - Mat::Identity(d, d)).norm(), 1e-14);
        EXPECT_LT((pauli_z(d, 2) - z * z).norm(), 1e-13);
    }
}

TEST(OperatorsTest, ShiftMovesBasisStates) {
    Mat x = pauli_x(4);
    EXPECT_LT((x * basis_vector(4, 1) - basis_vector(4, 2)).norm(), 1e-15);
    EXPECT_LT((x * basis_vector(4, 3) - basis_vector(4, 0)).norm(), 1e-15);
}

TEST(OperatorsTest, ControlledBlocks) {
    Mat c = controlled(3, 2, {{1, pauli_x(2)}});
    EXPECT_TRUE(is_unitary(c));
    EXPECT_EQ(c.rows(), 6);
    EXPECT_LT((c.block(0, 0, 2, 2) - Mat::Identity(2, 2)).norm(), 1e-15);
    EXPECT_LT((c.block(2, 2, 2, 2) - pauli_x(2)).norm(), 1e-15);
}

TEST(OperatorsTest, PermutationMatrixIsUnitaryAndRejectsNonPermutations) {
    Mat p = permutation_matrix({2, 0, 1});
    EXPECT_TRUE(is_unitary(p));
    EXPECT_LT((p * basis_vector(3, 0) - basis_vector(3, 2)).norm(), 1e-15);
    EXPECT_THROW(permutation_matrix({0, 0, 1}), Error);
}

TEST(OperatorsTest, CompleteUnitaryHonoursPrescribedColumns) {
    Vec in0 = basis_vector(3, 0);
    Vec out0 = (basis_vector(3, 1) + basis_vector(3, 2)) / std::sqrt(2.0);
    Mat u = complete_unitary({in0}, {out0}, 3);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    EXPECT_LT((u * in0 - out0).norm(), 1e-12);
    // Non-orthonormal targets cannot be completed.
    EXPECT_THROW(complete_unitary({basis_vector(3, 0), basis_vector(3, 1)}, {out0, out0}, 3), Error);
}

TEST(OperatorsTest, GfZIsCharacterOfTrace) {
    FieldSpec f = FieldSpec::make(2, 2);
    const double pi = std::acos(-1.0);
    for (const auto &t : f.elements()) {
        Mat z = gf_z(t);
        EXPECT_TRUE(is_unitary(z));
        for (const auto &x : f.elements()) {
            double sign = std::cos(pi * (double)(t * x).trace_to_prime());
            EXPECT_NEAR(z((Eigen::Index)x.index(), (Eigen::Index)x.index()).real(), sign, 1e-14);
        }
    }
}

TEST(OperatorsTest, MaxEntangledIsNormalized) {
    Vec v = max_entangled(4);
    EXPECT_NEAR(v.norm(), 1, 1e-15);
    EXPECT_NEAR(std::abs(v[5]), 0.5, 1e-15);
}
