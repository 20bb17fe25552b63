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

#ifndef QMCAST_QUDIT_STATE_H
#define QMCAST_QUDIT_STATE_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmcast/finite_field.h"

namespace qmcast {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct Register {
    std::string label;
    size_t dim;
};

/// Dense amplitudes over an ordered list of labelled registers.
///
/// The first register is the most significant digit of the amplitude index.
/// States are allowed to be unnormalized: after a measurement the squared norm
/// of each branch is the probability of reaching it.
class PureState {
   public:
    /// The scalar 1 with no registers.
    PureState();
    PureState(std::vector<Register> registers, Vec amplitudes);
    static PureState basis(std::vector<Register> registers, const std::vector<size_t> &digits);

    const std::vector<Register> &registers() const {
        return regs_;
    }
    const Vec &amplitudes() const {
        return amps_;
    }
    size_t total_dim() const {
        return (size_t)amps_.size();
    }
    bool has(const std::string &label) const;
    size_t position(const std::string &label) const;
    size_t dim(const std::string &label) const;
    std::vector<std::string> labels() const;
    double norm2() const;

    /// Tensors a new register holding `local` on the least significant side.
    void append(const Register &reg, const Vec &local);
    PureState tensor(const PureState &other) const;

    /// Applies a unitary on the listed registers (in the listed order). The
    /// operator is rejected unless U^dagger U = I within `tol`.
    void apply(const Mat &op, const std::vector<std::string> &labels, double tol = 1e-10);
    /// Maps the listed input registers to new output registers, which take the
    /// most significant positions of the registry.
    void apply_isometry(
        const Mat &op, const std::vector<std::string> &inputs, const std::vector<Register> &outputs, double tol = 1e-10);
    /// |k> -> |perm[k]> on the joint index of the listed registers.
    void apply_permutation(const std::vector<size_t> &perm, const std::vector<std::string> &labels);
    void apply_diagonal(const Vec &diag, const std::vector<std::string> &labels);

    /// Contracts register `label` with <bra| and removes it.
    PureState contracted(const std::string &label, const Vec &bra) const;
    /// Applies a projector on one register, keeping it in the registry.
    PureState projected(const std::string &label, const Mat &projector) const;

    /// Amplitudes with the registry reordered as `order` (must list every register).
    Vec amplitudes_in(const std::vector<std::string> &order) const;
    void rename(const std::string &from, const std::string &to);
    /// Shrinking requires zero amplitude on the dropped levels; growing pads.
    void resize_register(const std::string &label, size_t new_dim, double tol = 1e-12);
    void scale(cplx factor);

    /// Columns are the amplitude blocks for each assignment of the other
    /// registers; rows run over the listed registers in big-endian order.
    Mat gather(const std::vector<std::string> &labels) const;
    void scatter(const std::vector<std::string> &labels, const Mat &block);

   private:
    std::vector<size_t> positions(const std::vector<std::string> &labels) const;

    std::vector<Register> regs_;
    Vec amps_;
};

/// A complete measurement on a single register. Each outcome is either a rank-1
/// projector given by a unit vector (the register is consumed) or a general
/// projector (the register stays).
class Measurement {
   public:
    struct Outcome {
        int64_t value;
        bool rank_one;
        Vec vector;
        Mat projector;
    };

    static Measurement computational(size_t dim);
    /// |p~> = sum_x w^{px} / sqrt(d) |x>, w = exp(2 pi i / d).
    static Measurement zd_fourier(size_t dim);
    /// Register of dimension q^k read as F_q^k; each coordinate uses
    /// q^{-1/2} sum_x w^{Tr(xz)} |x> with w = exp(-2 pi i / p).
    static Measurement gf_fourier(const FieldSpec &field, size_t coordinates);
    /// {|0~><0~|, |1~><1~|, I - both} with |0~>, |1~> = (|0> +- |1>) / sqrt 2.
    static Measurement pk_family(size_t dim);

    const std::string &name() const {
        return name_;
    }
    size_t dim() const {
        return dim_;
    }
    const std::vector<Outcome> &outcomes() const {
        return outcomes_;
    }

   private:
    std::string name_;
    size_t dim_ = 0;
    std::vector<Outcome> outcomes_;
};

struct MeasurementBranch {
    int64_t outcome;
    PureState state;
    double probability;
};

/// Every branch of the measurement, including zero-probability ones.
std::vector<MeasurementBranch> measure(const PureState &state, const std::string &label, const Measurement &m);
PureState measure_outcome(const PureState &state, const std::string &label, const Measurement &m, size_t outcome);

/// Traces out a register by measuring it in the computational basis. Branches
/// whose squared norm is below `drop` are discarded.
std::vector<PureState> discard(const PureState &state, const std::string &label, double drop = 1e-24);

class DensityMatrix {
   public:
    DensityMatrix(std::vector<Register> registers, Mat rho);
    static DensityMatrix from_pure(const PureState &state, const std::vector<std::string> &order);
    /// Sum of |b><b| over the branches, each read in `order`.
    static DensityMatrix from_branches(const std::vector<PureState> &branches, const std::vector<std::string> &order);

    const std::vector<Register> &registers() const {
        return regs_;
    }
    const Mat &matrix() const {
        return rho_;
    }
    cplx trace() const {
        return rho_.trace();
    }
    double min_eigenvalue() const;

   private:
    std::vector<Register> regs_;
    Mat rho_;
};

DensityMatrix partial_trace(const PureState &state, const std::vector<std::string> &keep);
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::string> &keep);

/// <psi| rho |psi> for normalized psi.
double fidelity(const DensityMatrix &rho, const Vec &psi);
/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
/// |<a|b>| / (|a| |b|); zero when either vector vanishes.
double overlap_up_to_phase(const Vec &a, const Vec &b);

}  // namespace qmcast

#endif
