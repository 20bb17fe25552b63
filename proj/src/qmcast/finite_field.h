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

#ifndef QMCAST_FINITE_FIELD_H
#define QMCAST_FINITE_FIELD_H

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qmcast {

class FieldElement;

/// GF(p^t) described by its characteristic, degree and a monic irreducible
/// modulus. Copies share the same immutable description.
class FieldSpec {
   public:
    /// Builds GF(p^t) using the smallest monic irreducible polynomial of degree
    /// t, where polynomials are ordered by their non-leading coefficients read
    /// from degree t-1 down to degree 0.
    static FieldSpec make(uint32_t p, uint32_t t);

    /// Uses an explicit modulus (low-to-high coefficients, monic, length t+1).
    static FieldSpec with_modulus(uint32_t p, std::vector<uint32_t> modulus);

    uint32_t p() const;
    uint32_t t() const;
    uint64_t q() const;
    /// Coefficients low-to-high; length t+1 with a trailing 1.
    const std::vector<uint32_t> &modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    /// Element with index `index`, where index = sum_i c_i p^i.
    FieldElement element(uint64_t index) const;
    FieldElement from_coeffs(std::vector<uint32_t> coeffs) const;
    std::vector<FieldElement> elements() const;

    bool operator==(const FieldSpec &other) const;
    bool operator!=(const FieldSpec &other) const {
        return !(*this == other);
    }

    std::string str() const;

   private:
    struct Impl;
    explicit FieldSpec(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

bool is_prime(uint64_t n);
bool is_irreducible(uint32_t p, const std::vector<uint32_t> &monic_poly);

/// Polynomial-basis element of a FieldSpec.
class FieldElement {
   public:
    FieldElement(FieldSpec spec, std::vector<uint32_t> coeffs);

    const FieldSpec &spec() const {
        return spec_;
    }
    const std::vector<uint32_t> &coeffs() const {
        return coeffs_;
    }
    uint64_t index() const;
    bool is_zero() const;

    FieldElement operator+(const FieldElement &other) const;
    FieldElement operator-(const FieldElement &other) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement &other) const;
    FieldElement &operator+=(const FieldElement &other);
    FieldElement &operator*=(const FieldElement &other);
    FieldElement scaled(uint32_t prime_scalar) const;
    FieldElement pow(uint64_t exponent) const;
    FieldElement inv() const;

    /// Trace of the multiplication map x -> z x written in the polynomial basis.
    uint32_t trace_to_prime() const;

    bool operator==(const FieldElement &other) const;
    bool operator!=(const FieldElement &other) const {
        return !(*this == other);
    }

    std::string str() const;

   private:
    FieldSpec spec_;
    std::vector<uint32_t> coeffs_;
};

using FieldVector = std::vector<FieldElement>;

FieldElement dot(const FieldVector &a, const FieldVector &b);

class FieldMatrix {
   public:
    FieldMatrix(FieldSpec spec, size_t rows, size_t cols);
    static FieldMatrix identity(FieldSpec spec, size_t n);
    static FieldMatrix from_rows(FieldSpec spec, const std::vector<FieldVector> &rows, size_t cols);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    const FieldSpec &spec() const {
        return spec_;
    }
    FieldElement &at(size_t r, size_t c);
    const FieldElement &at(size_t r, size_t c) const;
    FieldVector row(size_t r) const;

    FieldVector operator*(const FieldVector &v) const;
    FieldMatrix operator*(const FieldMatrix &other) const;
    FieldMatrix transposed() const;
    bool operator==(const FieldMatrix &other) const;

   private:
    FieldSpec spec_;
    size_t rows_;
    size_t cols_;
    std::vector<FieldElement> data_;
};

struct LinearSolution {
    FieldVector x;
    size_t rank;
};

/// Solves A x = b by Gaussian elimination. Free variables are set to zero.
/// Throws Error(kInconsistent) when no solution exists.
LinearSolution solve_linear(const FieldMatrix &a, const FieldVector &b);
size_t rank(const FieldMatrix &a);

/// Vectors of F_q^k are indexed big-endian: the first coordinate is the most
/// significant digit in base q.
uint64_t vector_index(const FieldVector &v);
FieldVector vector_from_index(const FieldSpec &spec, uint64_t index, size_t length);

}  // namespace qmcast

#endif
