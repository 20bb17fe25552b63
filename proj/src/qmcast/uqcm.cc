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

#include "qmcast/uqcm.h"

#include <cmath>

#include "qmcast/error.h"

namespace qmcast {

namespace {

double quad12(double a, double b, size_t d) {
    return a * a + b * b + 2 * a * b / (double)d;
}

double quad13(const std::array<double, 3> &w, size_t d) {
    return w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + 2.0 / (double)d * (w[0] * w[1] + w[1] * w[2] + w[0] * w[2]);
}

void check_dim(size_t d) {
    if (d < 2) {
        fail(ErrorCode::kInvalidArgument, "clone dimension must be at least 2");
    }
}

void check_input(const Vec &psi, size_t d) {
    if ((size_t)psi.size() != d) {
        fail(ErrorCode::kDimMismatch, "input state dimension does not match the cloner");
    }
}

}  // namespace

CloneParams12 CloneParams12::exact(double a, double b, size_t d, double tol) {
    check_dim(d);
    double q = quad12(a, b, d);
    if (!(std::abs(q - 1) <= tol)) {
        fail(ErrorCode::kConstraintViolated, "a^2 + b^2 + 2ab/d = " + std::to_string(q) + ", expected 1");
    }
    return CloneParams12(a, b, d);
}

CloneParams12 CloneParams12::from_ratio(double a, double b, size_t d) {
    check_dim(d);
    double q = quad12(a, b, d);
    if (!(q > 1e-300) || !std::isfinite(q)) {
        fail(ErrorCode::kDegenerateParams, "the ratio (a, b) cannot be scaled onto the constraint surface");
    }
    double s = 1 / std::sqrt(q);
    return CloneParams12(a * s, b * s, d);
}

double CloneParams12::cos_eta() const {
    return a_ / std::sqrt(1 - 2 * a_ * b_ / (double)d_);
}

double CloneParams12::sin_eta() const {
    return b_ / std::sqrt(1 - 2 * a_ * b_ / (double)d_);
}

nlohmann::json CloneParams12::to_json() const {
    return {{"a", a_}, {"b", b_}, {"d", d_}, {"cos_eta", cos_eta()}, {"sin_eta", sin_eta()}};
}

CloneParams13 CloneParams13::exact(double alpha, double beta, double gamma, size_t d, double tol) {
    check_dim(d);
    std::array<double, 3> w{alpha, beta, gamma};
    for (double x : w) {
        if (!(x >= 0)) {
            fail(ErrorCode::kConstraintViolated, "1->3 weights must be non-negative");
        }
    }
    double q = quad13(w, d);
    if (!(std::abs(q - 1) <= tol)) {
        fail(ErrorCode::kConstraintViolated, "1->3 constraint evaluates to " + std::to_string(q) + ", expected 1");
    }
    return CloneParams13(w, d);
}

CloneParams13 CloneParams13::from_ratio(double alpha, double beta, double gamma, size_t d) {
    check_dim(d);
    std::array<double, 3> w{alpha, beta, gamma};
    for (double x : w) {
        if (!(x >= 0)) {
            fail(ErrorCode::kConstraintViolated, "1->3 weights must be non-negative");
        }
    }
    double q = quad13(w, d);
    if (!(q > 1e-300) || !std::isfinite(q)) {
        fail(ErrorCode::kDegenerateParams, "all 1->3 weights are zero");
    }
    double s = 1 / std::sqrt(q);
    return CloneParams13({w[0] * s, w[1] * s, w[2] * s}, d);
}

std::array<double, 3> CloneParams13::primed_six() const {
    double n = std::sqrt(2 * (w_[0] * w_[0] + w_[1] * w_[1] + w_[2] * w_[2]));
    return {w_[0] / n, w_[1] / n, w_[2] / n};
}

std::array<double, 3> CloneParams13::primed_pairs() const {
    std::array<double, 3> s{w_[0] + w_[1], w_[1] + w_[2], w_[2] + w_[0]};
    double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    return {s[0] / n, s[1] / n, s[2] / n};
}

std::array<double, 3> CloneParams13::primed_unit() const {
    double n = std::sqrt(w_[0] * w_[0] + w_[1] * w_[1] + w_[2] * w_[2]);
    return {w_[0] / n, w_[1] / n, w_[2] / n};
}

nlohmann::json CloneParams13::to_json() const {
    return {{"alpha", w_[0]}, {"beta", w_[1]}, {"gamma", w_[2]}, {"d", d_}};
}

Mat isometry_12(const CloneParams12 &p) {
    size_t d = p.d();
    Mat u = Mat::Zero((Eigen::Index)(d * d * d), (Eigen::Index)d);
    double s = 1 / std::sqrt((double)d);
    auto at = [&](size_t a, size_t b, size_t m) {
        return (Eigen::Index)((a * d + b) * d + m);
    };
    for (size_t j = 0; j < d; j++) {
        for (size_t k = 0; k < d; k++) {
            u(at(j, k, k), (Eigen::Index)j) += p.a() * s;
            u(at(k, j, k), (Eigen::Index)j) += p.b() * s;
        }
    }
    return u;
}

DensityMatrix channel_12_oracle(const Vec &psi, const CloneParams12 &p) {
    check_input(psi, p.d());
    size_t d = p.d();
    PureState s({{"A", d}}, psi);
    s.apply_isometry(isometry_12(p), {"A"}, {{"A", d}, {"B", d}, {"M", d}});
    return partial_trace(s, {"A", "B"});
}

std::pair<double, double> analytic_fidelities_12(const CloneParams12 &p) {
    double f = ((double)p.d() - 1) / (double)p.d();
    return {1 - p.b() * p.b() * f, 1 - p.a() * p.a() * f};
}

Vec branch_state_12(const Vec &psi, const CloneParams12 &p, size_t r) {
    check_input(psi, p.d());
    size_t d = p.d();
    if (r >= d) {
        fail(ErrorCode::kIndexOutOfRange, "ancilla outcome out of range");
    }
    double sd = std::sqrt((double)d);
    double shrink = std::sqrt(1 - 2 * p.a() * p.b() / (double)d);
    Vec out = Vec::Zero((Eigen::Index)(d * d));
    for (size_t j = 0; j < d; j++) {
        if (j == r) {
            out[(Eigen::Index)(r * d + r)] = psi[(Eigen::Index)r] / sd * (p.a() + p.b());
        } else {
            cplx beta = psi[(Eigen::Index)j] / sd * shrink;
            out[(Eigen::Index)(j * d + r)] += beta * p.cos_eta();
            out[(Eigen::Index)(r * d + j)] += beta * p.sin_eta();
        }
    }
    return out;
}

Mat isometry_13(const CloneParams13 &p) {
    size_t d = p.d();
    size_t n = d * d * d * d * d;
    Mat u = Mat::Zero((Eigen::Index)n, (Eigen::Index)d);
    double pre = std::sqrt((double)d / (2.0 * (double)d + 2.0)) / (double)d;
    auto at = [&](size_t a, size_t b, size_t c, size_t r, size_t s) {
        return (Eigen::Index)((((a * d + b) * d + c) * d + r) * d + s);
    };
    for (size_t j = 0; j < d; j++) {
        auto col = (Eigen::Index)j;
        for (size_t k = 0; k < d; k++) {
            for (size_t l = 0; l < d; l++) {
                // psi on A; pairs (B,R)(C,S) and (B,S)(C,R)
                u(at(j, k, l, k, l), col) += pre * p.alpha();
                u(at(j, k, l, l, k), col) += pre * p.alpha();
                // psi on B; pairs (A,R)(C,S) and (A,S)(C,R)
                u(at(k, j, l, k, l), col) += pre * p.beta();
                u(at(k, j, l, l, k), col) += pre * p.beta();
                // psi on C; pairs (A,R)(B,S) and (A,S)(B,R)
                u(at(k, l, j, k, l), col) += pre * p.gamma();
                u(at(k, l, j, l, k), col) += pre * p.gamma();
            }
        }
    }
    return u;
}

DensityMatrix channel_13_oracle(const Vec &psi, const CloneParams13 &p) {
    check_input(psi, p.d());
    size_t d = p.d();
    PureState s({{"A", d}}, psi);
    s.apply_isometry(isometry_13(p), {"A"}, {{"A", d}, {"B", d}, {"C", d}, {"R", d}, {"S", d}});
    return partial_trace(s, {"A", "B", "C"});
}

std::array<double, 3> analytic_fidelities_13(const CloneParams13 &p) {
    double f = ((double)p.d() - 1) / (double)p.d();
    double c = 2.0 / ((double)p.d() + 1);
    double a = p.alpha(), b = p.beta(), g = p.gamma();
    return {
        1 - f * (b * b + g * g + c * b * g),
        1 - f * (a * a + g * g + c * a * g),
        1 - f * (a * a + b * b + c * a * b),
    };
}

Vec branch_state_13(const Vec &psi, const CloneParams13 &p, size_t r, size_t s) {
    check_input(psi, p.d());
    size_t d = p.d();
    if (r >= d || s >= d) {
        fail(ErrorCode::kIndexOutOfRange, "ancilla outcome out of range");
    }
    Vec out = Vec::Zero((Eigen::Index)(d * d * d));
    auto at = [&](size_t a, size_t b, size_t c) {
        return (Eigen::Index)((a * d + b) * d + c);
    };
    double dd = (double)d;
    double pre = r != s ? 1 / std::sqrt(2 * dd * (dd + 1)) : std::sqrt(2 / (dd * (dd + 1)));
    // psi placed on one clone, the two ancilla readings on the others; for
    // r == s the two orderings coincide and are counted once.
    std::vector<std::pair<size_t, size_t>> orders{{r, s}};
    if (r != s) {
        orders.push_back({s, r});
    }
    for (size_t j = 0; j < d; j++) {
        cplx c = pre * psi[(Eigen::Index)j];
        for (auto [x, y] : orders) {
            out[at(j, x, y)] += c * p.alpha();
            out[at(x, j, y)] += c * p.beta();
            out[at(x, y, j)] += c * p.gamma();
        }
    }
    return out;
}

std::vector<double> clone_fidelities(const DensityMatrix &rho, const Vec &psi) {
    std::vector<double> out;
    for (const auto &reg : rho.registers()) {
        if (reg.dim < (size_t)psi.size()) {
            fail(ErrorCode::kDimMismatch, "register '" + reg.label + "' is smaller than the input state");
        }
        Vec padded = Vec::Zero((Eigen::Index)reg.dim);
        padded.head(psi.size()) = psi;
        out.push_back(fidelity(partial_trace(rho, {reg.label}), padded));
    }
    return out;
}

}  // namespace qmcast
