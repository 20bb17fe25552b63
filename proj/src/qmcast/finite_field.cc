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

#include "qmcast/finite_field.h"

#include <sstream>

#include "qmcast/error.h"

namespace qmcast {

struct FieldSpec::Impl {
    uint32_t p;
    uint32_t t;
    uint64_t q;
    std::vector<uint32_t> modulus;
};

namespace {

uint64_t ipow(uint64_t base, uint32_t exp) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

// Remainder of `poly` modulo the monic polynomial `divisor`, over GF(p).
std::vector<uint32_t> poly_mod(std::vector<uint32_t> poly, const std::vector<uint32_t> &divisor, uint32_t p) {
    size_t dd = divisor.size() - 1;
    for (size_t k = poly.size(); k-- > dd;) {
        uint64_t lead = poly[k];
        if (lead == 0) {
            continue;
        }
        for (size_t i = 0; i <= dd; i++) {
            uint64_t sub = lead * divisor[i] % p;
            size_t pos = k - dd + i;
            poly[pos] = (uint32_t)((poly[pos] + p - sub) % p);
        }
    }
    poly.resize(dd);
    return poly;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (uint64_t k = 2; k * k <= n; k++) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

bool is_irreducible(uint32_t p, const std::vector<uint32_t> &monic_poly) {
    size_t t = monic_poly.size() - 1;
    if (t == 0 || monic_poly.back() != 1) {
        return false;
    }
    if (t == 1) {
        return true;
    }
    for (size_t k = 1; k <= t / 2; k++) {
        uint64_t count = ipow(p, (uint32_t)k);
        for (uint64_t v = 0; v < count; v++) {
            std::vector<uint32_t> divisor(k + 1);
            uint64_t rest = v;
            for (size_t i = 0; i < k; i++) {
                divisor[i] = (uint32_t)(rest % p);
                rest /= p;
            }
            divisor[k] = 1;
            auto rem = poly_mod(monic_poly, divisor, p);
            bool zero = true;
            for (auto c : rem) {
                zero &= c == 0;
            }
            if (zero) {
                return false;
            }
        }
    }
    return true;
}

FieldSpec::FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
}

FieldSpec FieldSpec::make(uint32_t p, uint32_t t) {
    if (!is_prime(p)) {
        fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
    }
    if (t == 0) {
        fail(ErrorCode::kInvalidArgument, "extension degree must be at least 1");
    }
    uint64_t count = ipow(p, t);
    for (uint64_t v = 0; v < count; v++) {
        std::vector<uint32_t> poly(t + 1);
        uint64_t rest = v;
        for (uint32_t i = 0; i < t; i++) {
            poly[i] = (uint32_t)(rest % p);
            rest /= p;
        }
        poly[t] = 1;
        if (is_irreducible(p, poly)) {
            return with_modulus(p, std::move(poly));
        }
    }
    fail(ErrorCode::kInvalidArgument, "no irreducible polynomial found");
}

FieldSpec FieldSpec::with_modulus(uint32_t p, std::vector<uint32_t> modulus) {
    if (!is_prime(p)) {
        fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
    }
    for (auto c : modulus) {
        if (c >= p) {
            fail(ErrorCode::kInvalidArgument, "modulus coefficient out of range");
        }
    }
    if (!is_irreducible(p, modulus)) {
        fail(ErrorCode::kInvalidArgument, "modulus is not a monic irreducible polynomial");
    }
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->t = (uint32_t)(modulus.size() - 1);
    impl->q = ipow(p, impl->t);
    impl->modulus = std::move(modulus);
    return FieldSpec(std::move(impl));
}

uint32_t FieldSpec::p() const {
    return impl_->p;
}
uint32_t FieldSpec::t() const {
    return impl_->t;
}
uint64_t FieldSpec::q() const {
    return impl_->q;
}
const std::vector<uint32_t> &FieldSpec::modulus() const {
    return impl_->modulus;
}

FieldElement FieldSpec::zero() const {
    return FieldElement(*this, std::vector<uint32_t>(t(), 0));
}

FieldElement FieldSpec::one() const {
    std::vector<uint32_t> c(t(), 0);
    c[0] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement FieldSpec::element(uint64_t index) const {
    if (index >= q()) {
        fail(ErrorCode::kIndexOutOfRange, "field element index " + std::to_string(index) + " >= q");
    }
    std::vector<uint32_t> c(t());
    for (uint32_t i = 0; i < t(); i++) {
        c[i] = (uint32_t)(index % p());
        index /= p();
    }
    return FieldElement(*this, std::move(c));
}

FieldElement FieldSpec::from_coeffs(std::vector<uint32_t> coeffs) const {
    return FieldElement(*this, std::move(coeffs));
}

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q());
    for (uint64_t i = 0; i < q(); i++) {
        out.push_back(element(i));
    }
    return out;
}

bool FieldSpec::operator==(const FieldSpec &other) const {
    return impl_ == other.impl_ || (impl_->p == other.impl_->p && impl_->modulus == other.impl_->modulus);
}

std::string FieldSpec::str() const {
    std::stringstream ss;
    ss << "GF(" << p();
    if (t() > 1) {
        ss << "^" << t();
    }
    ss << ")";
    return ss.str();
}

FieldElement::FieldElement(FieldSpec spec, std::vector<uint32_t> coeffs) : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != spec_.t()) {
        fail(ErrorCode::kDimMismatch, "element needs exactly t coefficients");
    }
    for (auto c : coeffs_) {
        if (c >= spec_.p()) {
            fail(ErrorCode::kInvalidArgument, "coefficient out of range [0, p)");
        }
    }
}

uint64_t FieldElement::index() const {
    uint64_t idx = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        idx = idx * spec_.p() + coeffs_[i];
    }
    return idx;
}

bool FieldElement::is_zero() const {
    for (auto c : coeffs_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

static void require_same(const FieldSpec &a, const FieldSpec &b) {
    if (a != b) {
        fail(ErrorCode::kSpecMismatch, "operands belong to " + a.str() + " and " + b.str());
    }
}

FieldElement FieldElement::operator+(const FieldElement &other) const {
    FieldElement r = *this;
    r += other;
    return r;
}

FieldElement &FieldElement::operator+=(const FieldElement &other) {
    require_same(spec_, other.spec_);
    uint32_t p = spec_.p();
    for (size_t i = 0; i < coeffs_.size(); i++) {
        coeffs_[i] = (coeffs_[i] + other.coeffs_[i]) % p;
    }
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    uint32_t p = spec_.p();
    for (auto &c : r.coeffs_) {
        c = (p - c) % p;
    }
    return r;
}

FieldElement FieldElement::operator-(const FieldElement &other) const {
    return *this + (-other);
}

FieldElement FieldElement::operator*(const FieldElement &other) const {
    require_same(spec_, other.spec_);
    uint32_t p = spec_.p();
    size_t t = coeffs_.size();
    std::vector<uint32_t> prod(2 * t - 1, 0);
    for (size_t i = 0; i < t; i++) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < t; j++) {
            prod[i + j] = (uint32_t)((prod[i + j] + (uint64_t)coeffs_[i] * other.coeffs_[j]) % p);
        }
    }
    return FieldElement(spec_, poly_mod(std::move(prod), spec_.modulus(), p));
}

FieldElement &FieldElement::operator*=(const FieldElement &other) {
    *this = *this * other;
    return *this;
}

FieldElement FieldElement::scaled(uint32_t prime_scalar) const {
    FieldElement r = *this;
    uint32_t p = spec_.p();
    for (auto &c : r.coeffs_) {
        c = (uint32_t)((uint64_t)c * (prime_scalar % p) % p);
    }
    return r;
}

FieldElement FieldElement::pow(uint64_t exponent) const {
    FieldElement result = spec_.one();
    FieldElement base = *this;
    while (exponent) {
        if (exponent & 1) {
            result *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return result;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) {
        fail(ErrorCode::kZeroInverse, "zero has no multiplicative inverse");
    }
    return pow(spec_.q() - 2);
}

uint32_t FieldElement::trace_to_prime() const {
    // Column i of the multiplication matrix is z * x^i; the trace sums the
    // i-th coefficient of each column.
    uint32_t p = spec_.p();
    uint32_t t = spec_.t();
    uint64_t tr = 0;
    for (uint32_t i = 0; i < t; i++) {
        std::vector<uint32_t> basis(t, 0);
        basis[i] = 1;
        FieldElement col = *this * FieldElement(spec_, std::move(basis));
        tr += col.coeffs_[i];
    }
    return (uint32_t)(tr % p);
}

bool FieldElement::operator==(const FieldElement &other) const {
    return spec_ == other.spec_ && coeffs_ == other.coeffs_;
}

std::string FieldElement::str() const {
    if (spec_.t() == 1) {
        return std::to_string(coeffs_[0]);
    }
    std::string out;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "+";
        }
        if (coeffs_[i] != 1 || i == 0) {
            out += std::to_string(coeffs_[i]);
        }
        if (i >= 1) {
            out += "x";
        }
        if (i >= 2) {
            out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

FieldElement dot(const FieldVector &a, const FieldVector &b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::kDimMismatch, "dot product of vectors with different lengths");
    }
    if (a.empty()) {
        fail(ErrorCode::kDimMismatch, "dot product of empty vectors has no field");
    }
    FieldElement acc = a[0].spec().zero();
    for (size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

FieldMatrix::FieldMatrix(FieldSpec spec, size_t rows, size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, spec.zero()) {
}

FieldMatrix FieldMatrix::identity(FieldSpec spec, size_t n) {
    FieldMatrix m(spec, n, n);
    for (size_t i = 0; i < n; i++) {
        m.at(i, i) = spec.one();
    }
    return m;
}

FieldMatrix FieldMatrix::from_rows(FieldSpec spec, const std::vector<FieldVector> &rows, size_t cols) {
    FieldMatrix m(spec, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            fail(ErrorCode::kDimMismatch, "ragged matrix rows");
        }
        for (size_t c = 0; c < cols; c++) {
            require_same(spec, rows[r][c].spec());
            m.at(r, c) = rows[r][c];
        }
    }
    return m;
}

FieldElement &FieldMatrix::at(size_t r, size_t c) {
    if (r >= rows_ || c >= cols_) {
        fail(ErrorCode::kIndexOutOfRange, "matrix index out of range");
    }
    return data_[r * cols_ + c];
}

const FieldElement &FieldMatrix::at(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) {
        fail(ErrorCode::kIndexOutOfRange, "matrix index out of range");
    }
    return data_[r * cols_ + c];
}

FieldVector FieldMatrix::row(size_t r) const {
    return FieldVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

FieldVector FieldMatrix::operator*(const FieldVector &v) const {
    if (v.size() != cols_) {
        fail(ErrorCode::kDimMismatch, "matrix-vector size mismatch");
    }
    FieldVector out(rows_, spec_.zero());
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out[r] += at(r, c) * v[c];
        }
    }
    return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix &other) const {
    require_same(spec_, other.spec_);
    if (cols_ != other.rows_) {
        fail(ErrorCode::kDimMismatch, "matrix-matrix size mismatch");
    }
    FieldMatrix out(spec_, rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < other.cols_; c++) {
            for (size_t k = 0; k < cols_; k++) {
                out.at(r, c) += at(r, k) * other.at(k, c);
            }
        }
    }
    return out;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix out(spec_, cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out.at(c, r) = at(r, c);
        }
    }
    return out;
}

bool FieldMatrix::operator==(const FieldMatrix &other) const {
    return spec_ == other.spec_ && rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

namespace {

struct Echelon {
    FieldMatrix m;
    std::vector<size_t> pivot_cols;
};

// Reduced row echelon form of the augmented matrix [a | extra].
Echelon reduce(FieldMatrix m, size_t coefficient_cols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < coefficient_cols && row < m.rows(); col++) {
        size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) {
            pivot++;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != row) {
            for (size_t c = 0; c < m.cols(); c++) {
                std::swap(m.at(pivot, c), m.at(row, c));
            }
        }
        FieldElement inv = m.at(row, col).inv();
        for (size_t c = 0; c < m.cols(); c++) {
            m.at(row, c) *= inv;
        }
        for (size_t r = 0; r < m.rows(); r++) {
            if (r == row || m.at(r, col).is_zero()) {
                continue;
            }
            FieldElement factor = m.at(r, col);
            for (size_t c = 0; c < m.cols(); c++) {
                m.at(r, c) = m.at(r, c) - factor * m.at(row, c);
            }
        }
        pivots.push_back(col);
        row++;
    }
    return {std::move(m), std::move(pivots)};
}

}  // namespace

LinearSolution solve_linear(const FieldMatrix &a, const FieldVector &b) {
    if (b.size() != a.rows()) {
        fail(ErrorCode::kDimMismatch, "right-hand side length does not match matrix rows");
    }
    FieldMatrix aug(a.spec(), a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            aug.at(r, c) = a.at(r, c);
        }
        aug.at(r, a.cols()) = b[r];
    }
    Echelon e = reduce(std::move(aug), a.cols());
    size_t rk = e.pivot_cols.size();
    for (size_t r = rk; r < a.rows(); r++) {
        if (!e.m.at(r, a.cols()).is_zero()) {
            fail(ErrorCode::kInconsistent, "linear system has no solution (rank " + std::to_string(rk) + ")");
        }
    }
    FieldVector x(a.cols(), a.spec().zero());
    for (size_t i = 0; i < rk; i++) {
        x[e.pivot_cols[i]] = e.m.at(i, a.cols());
    }
    return {std::move(x), rk};
}

size_t rank(const FieldMatrix &a) {
    return reduce(a, a.cols()).pivot_cols.size();
}

uint64_t vector_index(const FieldVector &v) {
    uint64_t idx = 0;
    for (const auto &e : v) {
        idx = idx * e.spec().q() + e.index();
    }
    return idx;
}

FieldVector vector_from_index(const FieldSpec &spec, uint64_t index, size_t length) {
    FieldVector v(length, spec.zero());
    for (size_t k = length; k-- > 0;) {
        v[k] = spec.element(index % spec.q());
        index /= spec.q();
    }
    if (index != 0) {
        fail(ErrorCode::kIndexOutOfRange, "vector index exceeds q^length");
    }
    return v;
}

}  // namespace qmcast
