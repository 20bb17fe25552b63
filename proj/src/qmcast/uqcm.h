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

#ifndef QMCAST_UQCM_H
#define QMCAST_UQCM_H

#include <array>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmcast/qudit_state.h"

namespace qmcast {

/// Weights (a, b) of the 1 -> 2 asymmetric cloner on dimension d, on the
/// surface a^2 + b^2 + 2ab/d = 1.
class CloneParams12 {
   public:
    /// Takes (a, b) as given; throws ConstraintViolated if off the surface.
    static CloneParams12 exact(double a, double b, size_t d, double tol = 1e-12);
    /// Rescales the direction (a, b) onto the surface.
    static CloneParams12 from_ratio(double a, double b, size_t d);

    double a() const {
        return a_;
    }
    double b() const {
        return b_;
    }
    size_t d() const {
        return d_;
    }
    double cos_eta() const;
    double sin_eta() const;
    nlohmann::json to_json() const;

   private:
    CloneParams12(double a, double b, size_t d) : a_(a), b_(b), d_(d) {
    }
    double a_, b_;
    size_t d_;
};

/// Non-negative weights (alpha, beta, gamma) of the 1 -> 3 cloner, on the
/// surface alpha^2 + beta^2 + gamma^2 + (2/d)(alpha beta + beta gamma + gamma alpha) = 1.
class CloneParams13 {
   public:
    static CloneParams13 exact(double alpha, double beta, double gamma, size_t d, double tol = 1e-12);
    static CloneParams13 from_ratio(double alpha, double beta, double gamma, size_t d);

    double alpha() const {
        return w_[0];
    }
    double beta() const {
        return w_[1];
    }
    double gamma() const {
        return w_[2];
    }
    size_t d() const {
        return d_;
    }

    /// (alpha, beta, gamma) / sqrt(2 (alpha^2 + beta^2 + gamma^2)).
    std::array<double, 3> primed_six() const;
    /// (alpha + beta, beta + gamma, gamma + alpha), normalized.
    std::array<double, 3> primed_pairs() const;
    /// (alpha, beta, gamma), normalized.
    std::array<double, 3> primed_unit() const;
    nlohmann::json to_json() const;

   private:
    CloneParams13(std::array<double, 3> w, size_t d) : w_(w), d_(d) {
    }
    std::array<double, 3> w_;
    size_t d_;
};

/// d^3 x d isometry from A onto A, B, M (big-endian in that order).
Mat isometry_12(const CloneParams12 &p);
/// Reduced state on A, B of the cloner applied to psi.
DensityMatrix channel_12_oracle(const Vec &psi, const CloneParams12 &p);
/// (F_A, F_B) in closed form.
std::pair<double, double> analytic_fidelities_12(const CloneParams12 &p);
/// Unnormalized A, B state left after the ancilla reads r, written directly
/// from the beta_j amplitudes.
Vec branch_state_12(const Vec &psi, const CloneParams12 &p, size_t r);

/// d^5 x d isometry from A onto A, B, C, R, S.
Mat isometry_13(const CloneParams13 &p);
DensityMatrix channel_13_oracle(const Vec &psi, const CloneParams13 &p);
std::array<double, 3> analytic_fidelities_13(const CloneParams13 &p);
/// Unnormalized A, B, C state left after the ancillas read (r, s).
Vec branch_state_13(const Vec &psi, const CloneParams13 &p, size_t r, size_t s);

/// Fidelity of every single-register marginal of rho with psi. Registers
/// larger than psi are compared against psi padded with zeros.
std::vector<double> clone_fidelities(const DensityMatrix &rho, const Vec &psi);

}  // namespace qmcast

#endif
