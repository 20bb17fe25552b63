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

#include "qmcast/operators.h"

#include <cmath>

#include "qmcast/error.h"

namespace qmcast {

namespace {
constexpr double kPi = 3.14159265358979323846;

int64_t mod(int64_t a, int64_t m) {
    return ((a % m) + m) % m;
}

// Orthonormal complement of `family`, grown from e_0, e_1, ... in order.
std::vector<Vec> complement(const std::vector<Vec> &family, size_t dim) {
    std::vector<Vec> basis = family;
    std::vector<Vec> extra;
    for (size_t k = 0; k < dim && basis.size() < dim; k++) {
        Vec v = basis_vector(dim, k);
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                v -= b * b.dot(v);
            }
        }
        double n = v.norm();
        if (n > 1e-8) {
            v /= n;
            basis.push_back(v);
            extra.push_back(v);
        }
    }
    return extra;
}

void check_orthonormal(const std::vector<Vec> &family, size_t dim) {
    for (size_t i = 0; i < family.size(); i++) {
        if ((size_t)family[i].size() != dim) {
            fail(ErrorCode::kDimMismatch, "defining vector has the wrong dimension");
        }
        for (size_t j = 0; j <= i; j++) {
            cplx g = family[j].dot(family[i]);
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10) {
                fail(ErrorCode::kNonIsometry, "defining vectors are not orthonormal");
            }
        }
    }
}
}  // namespace

Vec basis_vector(size_t d, size_t k) {
    Vec v = Vec::Zero((Eigen::Index)d);
    v[(Eigen::Index)k] = 1;
    return v;
}

Vec max_entangled(size_t d) {
    Vec v = Vec::Zero((Eigen::Index)(d * d));
    for (size_t k = 0; k < d; k++) {
        v[(Eigen::Index)(k * d + k)] = 1.0 / std::sqrt((double)d);
    }
    return v;
}

Mat pauli_x(size_t d, int64_t power) {
    Mat m = Mat::Zero((Eigen::Index)d, (Eigen::Index)d);
    for (size_t k = 0; k < d; k++) {
        m((Eigen::Index)mod((int64_t)k + power, (int64_t)d), (Eigen::Index)k) = 1;
    }
    return m;
}

Vec pauli_z_diagonal(size_t d, int64_t power) {
    Vec v((Eigen::Index)d);
    for (size_t k = 0; k < d; k++) {
        v[(Eigen::Index)k] = std::polar(1.0, 2 * kPi * (double)mod(power * (int64_t)k, (int64_t)d) / (double)d);
    }
    return v;
}

Mat pauli_z(size_t d, int64_t power) {
    return pauli_z_diagonal(d, power).asDiagonal();
}

Mat gf_z(const FieldElement &t) {
    const FieldSpec &f = t.spec();
    Vec v((Eigen::Index)f.q());
    for (const auto &x : f.elements()) {
        v[(Eigen::Index)x.index()] = std::polar(1.0, -2 * kPi * (double)(x * t).trace_to_prime() / (double)f.p());
    }
    return v.asDiagonal();
}

Vec gf_z_diagonal(const FieldVector &c) {
    Vec v = Vec::Ones(1);
    for (const auto &ck : c) {
        Vec single = gf_z(ck).diagonal();
        Vec next(v.size() * single.size());
        for (Eigen::Index i = 0; i < v.size(); i++) {
            next.segment(i * single.size(), single.size()) = v[i] * single;
        }
        v = std::move(next);
    }
    return v;
}

Mat controlled(size_t d, size_t k, const std::map<size_t, Mat> &blocks) {
    Mat m = Mat::Identity((Eigen::Index)(d * k), (Eigen::Index)(d * k));
    for (const auto &[j, u] : blocks) {
        if (j >= d || (size_t)u.rows() != k || (size_t)u.cols() != k) {
            fail(ErrorCode::kDimMismatch, "controlled block has the wrong shape");
        }
        m.block((Eigen::Index)(j * k), (Eigen::Index)(j * k), (Eigen::Index)k, (Eigen::Index)k) = u;
    }
    return m;
}

Mat permutation_matrix(const std::vector<size_t> &perm) {
    size_t n = perm.size();
    Mat m = Mat::Zero((Eigen::Index)n, (Eigen::Index)n);
    for (size_t x = 0; x < n; x++) {
        m((Eigen::Index)perm[x], (Eigen::Index)x) = 1;
    }
    if (!is_unitary(m)) {
        fail(ErrorCode::kNonIsometry, "map is not a permutation");
    }
    return m;
}

Mat complete_unitary(const std::vector<Vec> &inputs, const std::vector<Vec> &outputs, size_t dim) {
    if (inputs.size() != outputs.size() || inputs.size() > dim) {
        fail(ErrorCode::kDimMismatch, "need equally many inputs and outputs, at most the dimension");
    }
    check_orthonormal(inputs, dim);
    check_orthonormal(outputs, dim);
    std::vector<Vec> cin = complement(inputs, dim);
    std::vector<Vec> cout = complement(outputs, dim);
    Mat u = Mat::Zero((Eigen::Index)dim, (Eigen::Index)dim);
    for (size_t i = 0; i < inputs.size(); i++) {
        u += outputs[i] * inputs[i].adjoint();
    }
    for (size_t i = 0; i < cin.size(); i++) {
        u += cout[i] * cin[i].adjoint();
    }
    return u;
}

bool is_unitary(const Mat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return ((m.adjoint() * m) - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qmcast
