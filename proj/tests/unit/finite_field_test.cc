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

#include "qmcast/error.h"
#include "qmcast/finite_field.h"

using namespace qmcast;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::kInvalidArgument;
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<uint32_t, uint32_t>> {};

}  // namespace

TEST(FieldSpecTest, RejectsCompositeCharacteristic) {
    EXPECT_EQ(code_of([] { FieldSpec::make(4, 1); }), ErrorCode::kNonPrime);
    EXPECT_EQ(code_of([] { FieldSpec::make(1, 1); }), ErrorCode::kNonPrime);
    EXPECT_EQ(code_of([] { FieldSpec::make(9, 2); }), ErrorCode::kNonPrime);
}

TEST(FieldSpecTest, PrimalityHelper) {
    std::vector<uint64_t> primes{2, 3, 5, 7, 11, 13, 97, 65537};
    for (auto p : primes) {
        EXPECT_TRUE(is_prime(p)) << p;
    }
    for (uint64_t n : {0, 1, 4, 9, 15, 91, 65535}) {
        EXPECT_FALSE(is_prime(n)) << n;
    }
}

TEST(FieldSpecTest, ReducibleModulusRejected) {
    // x^2 + 1 = (x + 1)^2 over GF(2)
    EXPECT_FALSE(is_irreducible(2, {1, 0, 1}));
    EXPECT_TRUE(is_irreducible(2, {1, 1, 1}));
    EXPECT_THROW(FieldSpec::with_modulus(2, {1, 0, 1}), Error);
}

TEST(FieldSpecTest, OrderAndEnumeration) {
    FieldSpec f = FieldSpec::make(3, 2);
    EXPECT_EQ(f.q(), 9u);
    auto all = f.elements();
    ASSERT_EQ(all.size(), 9u);
    for (uint64_t i = 0; i < 9; i++) {
        EXPECT_EQ(all[i].index(), i);
        EXPECT_EQ(f.element(i).index(), i);
    }
    EXPECT_EQ(code_of([&] { f.element(9); }), ErrorCode::kIndexOutOfRange);
}

TEST(FieldSpecTest, Gf4MultiplicationTable) {
    // GF(4) = GF(2)[x]/(x^2+x+1); indices 0,1,2,3 = 0, 1, x, x+1.
    FieldSpec f = FieldSpec::with_modulus(2, {1, 1, 1});
    const int table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            EXPECT_EQ((f.element(i) * f.element(j)).index(), (uint64_t)table[i][j]) << i << "*" << j;
            EXPECT_EQ((f.element(i) + f.element(j)).index(), (uint64_t)(i ^ j));
        }
    }
}

TEST(FieldSpecTest, MixingFieldsFails) {
    FieldSpec a = FieldSpec::make(2, 2), b = FieldSpec::make(3, 1);
    EXPECT_EQ(code_of([&] { (void)(a.one() + b.one()); }), ErrorCode::kSpecMismatch);
    EXPECT_EQ(code_of([&] { a.zero().inv(); }), ErrorCode::kZeroInverse);
}

TEST_P(FieldAxioms, HoldExhaustively) {
    auto [p, t] = GetParam();
    FieldSpec f = FieldSpec::make(p, t);
    auto all = f.elements();
    for (const auto &x : all) {
        EXPECT_EQ(x + f.zero(), x);
        EXPECT_EQ(x * f.one(), x);
        EXPECT_TRUE((x + (-x)).is_zero());
        EXPECT_TRUE((x - x).is_zero());
        if (!x.is_zero()) {
            EXPECT_EQ(x * x.inv(), f.one());
            // Lagrange: x^(q-1) = 1
            EXPECT_EQ(x.pow(f.q() - 1), f.one());
        }
        // Frobenius fixes exactly the prime subfield, and the trace lands there.
        EXPECT_LT(x.trace_to_prime(), p);
        EXPECT_EQ(x.scaled(p).index(), 0u);
        for (const auto &y : all) {
            EXPECT_EQ(x * y, y * x);
            EXPECT_EQ(x + y, y + x);
            auto sum_trace = (x + y).trace_to_prime();
            EXPECT_EQ(sum_trace, (x.trace_to_prime() + y.trace_to_prime()) % p);
        }
    }
    // Associativity and distributivity on a sample of triples.
    for (size_t i = 0; i < all.size(); i += 1 + all.size() / 5) {
        for (size_t j = 0; j < all.size(); j++) {
            for (size_t k = 0; k < all.size(); k += 1 + all.size() / 7) {
                const auto &x = all[i], &y = all[j], &z = all[k];
                EXPECT_EQ((x * y) * z, x * (y * z));
                EXPECT_EQ(x * (y + z), x * y + x * z);
                EXPECT_EQ((x + y) + z, x + (y + z));
            }
        }
    }
    // The trace is onto F_p: every residue appears q/p times.
    std::map<uint32_t, size_t> counts;
    for (const auto &x : all) {
        counts[x.trace_to_prime()]++;
    }
    ASSERT_EQ(counts.size(), p);
    for (auto [v, n] : counts) {
        EXPECT_EQ(n, f.q() / p) << "trace value " << v;
    }
}

TEST_P(FieldAxioms, MultiplicativeGroupIsCyclic) {
    auto [p, t] = GetParam();
    FieldSpec f = FieldSpec::make(p, t);
    bool found = false;
    for (const auto &g : f.elements()) {
        if (g.is_zero()) {
            continue;
        }
        std::set<uint64_t> seen;
        FieldElement x = f.one();
        for (uint64_t k = 0; k + 1 < f.q(); k++) {
            seen.insert(x.index());
            x *= g;
        }
        if (seen.size() == f.q() - 1) {
            found = true;
            break;
        }
    }
    EXPECT_TRUE(found);
}

INSTANTIATE_TEST_SUITE_P(
    SmallFields,
    FieldAxioms,
    ::testing::Values(
        std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{5u, 1u}, std::pair{2u, 2u}, std::pair{2u, 3u},
        std::pair{3u, 2u}, std::pair{2u, 4u}, std::pair{7u, 1u}));

TEST(FieldMatrixTest, SolveAndRank) {
    FieldSpec f = FieldSpec::make(5, 1);
    auto e = [&](uint64_t i) { return f.element(i); };
    FieldMatrix a = FieldMatrix::from_rows(f, {{e(1), e(2)}, {e(3), e(4)}}, 2);
    EXPECT_EQ(rank(a), 2u);
    FieldVector b{e(1), e(0)};
    auto sol = solve_linear(a, b);
    EXPECT_EQ(a * sol.x, b);
    FieldMatrix singular = FieldMatrix::from_rows(f, {{e(1), e(2)}, {e(2), e(4)}}, 2);
    EXPECT_EQ(rank(singular), 1u);
    EXPECT_EQ(code_of([&] { solve_linear(singular, FieldVector{e(1), e(1)}); }), ErrorCode::kInconsistent);
    EXPECT_EQ(FieldMatrix::identity(f, 2) * a, a);
}

TEST(FieldMatrixTest, VectorIndexRoundTrip) {
    FieldSpec f = FieldSpec::make(3, 1);
    for (uint64_t i = 0; i < 27; i++) {
        auto v = vector_from_index(f, i, 3);
        ASSERT_EQ(v.size(), 3u);
        EXPECT_EQ(vector_index(v), i);
    }
}
