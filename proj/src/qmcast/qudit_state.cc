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

#include "qmcast/qudit_state.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmcast/error.h"

namespace qmcast {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct IndexMap {
    std::vector<size_t> offsets;  // one per joint index of the selected registers
    std::vector<size_t> bases;    // one per assignment of the remaining registers
};

// Splits a big-endian index space into the selected registers (in the given
// order) and everything else (in registry order).
IndexMap split_index(const std::vector<size_t> &dims, const std::vector<size_t> &selected) {
    size_t n = dims.size();
    std::vector<size_t> stride(n, 1);
    for (size_t i = n; i-- > 1;) {
        stride[i - 1] = stride[i] * dims[i];
    }
    std::vector<bool> chosen(n, false);
    for (size_t p : selected) {
        if (chosen[p]) {
            fail(ErrorCode::kInvalidArgument, "a register is listed twice");
        }
        chosen[p] = true;
    }
    std::vector<size_t> rest;
    for (size_t i = 0; i < n; i++) {
        if (!chosen[i]) {
            rest.push_back(i);
        }
    }
    auto enumerate = [&](const std::vector<size_t> &pos) {
        size_t count = 1;
        for (size_t p : pos) {
            count *= dims[p];
        }
        std::vector<size_t> out(count);
        std::vector<size_t> digit(pos.size(), 0);
        for (size_t k = 0; k < count; k++) {
            size_t idx = 0;
            for (size_t j = 0; j < pos.size(); j++) {
                idx += digit[j] * stride[pos[j]];
            }
            out[k] = idx;
            for (size_t j = pos.size(); j-- > 0;) {
                if (++digit[j] < dims[pos[j]]) {
                    break;
                }
                digit[j] = 0;
            }
        }
        return out;
    };
    return {enumerate(selected), enumerate(rest)};
}

std::vector<size_t> dims_of(const std::vector<Register> &regs) {
    std::vector<size_t> d;
    for (const auto &r : regs) {
        d.push_back(r.dim);
    }
    return d;
}

size_t product(const std::vector<Register> &regs) {
    size_t p = 1;
    for (const auto &r : regs) {
        p *= r.dim;
    }
    return p;
}

void check_isometry(const Mat &op, double tol) {
    Mat g = op.adjoint() * op;
    double err = (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    if (!(err <= tol)) {
        fail(ErrorCode::kNonIsometry, "operator columns are not orthonormal (deviation " + std::to_string(err) + ")");
    }
}

}  // namespace

PureState::PureState() : amps_(Vec::Ones(1)) {
}

PureState::PureState(std::vector<Register> registers, Vec amplitudes)
    : regs_(std::move(registers)), amps_(std::move(amplitudes)) {
    for (size_t i = 0; i < regs_.size(); i++) {
        if (regs_[i].dim < 1) {
            fail(ErrorCode::kDimMismatch, "register '" + regs_[i].label + "' has dimension 0");
        }
        for (size_t j = 0; j < i; j++) {
            if (regs_[i].label == regs_[j].label) {
                fail(ErrorCode::kInvalidArgument, "duplicate register '" + regs_[i].label + "'");
            }
        }
    }
    if ((size_t)amps_.size() != product(regs_)) {
        fail(ErrorCode::kDimMismatch, "amplitude vector length does not match the registry");
    }
}

PureState PureState::basis(std::vector<Register> registers, const std::vector<size_t> &digits) {
    if (digits.size() != registers.size()) {
        fail(ErrorCode::kDimMismatch, "need one digit per register");
    }
    size_t idx = 0;
    for (size_t i = 0; i < digits.size(); i++) {
        if (digits[i] >= registers[i].dim) {
            fail(ErrorCode::kIndexOutOfRange, "basis digit out of range");
        }
        idx = idx * registers[i].dim + digits[i];
    }
    Vec amps = Vec::Zero((Eigen::Index)product(registers));
    amps[(Eigen::Index)idx] = 1;
    return PureState(std::move(registers), std::move(amps));
}

bool PureState::has(const std::string &label) const {
    return std::any_of(regs_.begin(), regs_.end(), [&](const Register &r) {
        return r.label == label;
    });
}

size_t PureState::position(const std::string &label) const {
    for (size_t i = 0; i < regs_.size(); i++) {
        if (regs_[i].label == label) {
            return i;
        }
    }
    fail(ErrorCode::kUnknownRegister, "no register named '" + label + "'");
}

size_t PureState::dim(const std::string &label) const {
    return regs_[position(label)].dim;
}

std::vector<std::string> PureState::labels() const {
    std::vector<std::string> out;
    for (const auto &r : regs_) {
        out.push_back(r.label);
    }
    return out;
}

double PureState::norm2() const {
    return amps_.squaredNorm();
}

std::vector<size_t> PureState::positions(const std::vector<std::string> &labels) const {
    std::vector<size_t> out;
    for (const auto &l : labels) {
        out.push_back(position(l));
    }
    return out;
}

void PureState::append(const Register &reg, const Vec &local) {
    if (has(reg.label)) {
        fail(ErrorCode::kInvalidArgument, "register '" + reg.label + "' already exists");
    }
    if ((size_t)local.size() != reg.dim) {
        fail(ErrorCode::kDimMismatch, "local state length does not match register '" + reg.label + "'");
    }
    Vec out(amps_.size() * local.size());
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        out.segment(i * local.size(), local.size()) = amps_[i] * local;
    }
    amps_ = std::move(out);
    regs_.push_back(reg);
}

PureState PureState::tensor(const PureState &other) const {
    std::vector<Register> regs = regs_;
    for (const auto &r : other.regs_) {
        regs.push_back(r);
    }
    Vec out(amps_.size() * other.amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        out.segment(i * other.amps_.size(), other.amps_.size()) = amps_[i] * other.amps_;
    }
    return PureState(std::move(regs), std::move(out));
}

Mat PureState::gather(const std::vector<std::string> &labels) const {
    IndexMap map = split_index(dims_of(regs_), positions(labels));
    Mat block((Eigen::Index)map.offsets.size(), (Eigen::Index)map.bases.size());
    for (size_t b = 0; b < map.bases.size(); b++) {
        for (size_t k = 0; k < map.offsets.size(); k++) {
            block((Eigen::Index)k, (Eigen::Index)b) = amps_[(Eigen::Index)(map.bases[b] + map.offsets[k])];
        }
    }
    return block;
}

void PureState::scatter(const std::vector<std::string> &labels, const Mat &block) {
    IndexMap map = split_index(dims_of(regs_), positions(labels));
    if ((size_t)block.rows() != map.offsets.size() || (size_t)block.cols() != map.bases.size()) {
        fail(ErrorCode::kDimMismatch, "block shape does not match the registers");
    }
    for (size_t b = 0; b < map.bases.size(); b++) {
        for (size_t k = 0; k < map.offsets.size(); k++) {
            amps_[(Eigen::Index)(map.bases[b] + map.offsets[k])] = block((Eigen::Index)k, (Eigen::Index)b);
        }
    }
}

void PureState::apply(const Mat &op, const std::vector<std::string> &labels, double tol) {
    size_t k = 1;
    for (const auto &l : labels) {
        k *= dim(l);
    }
    if ((size_t)op.rows() != k || (size_t)op.cols() != k) {
        fail(ErrorCode::kDimMismatch,
             "operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + " but registers span " +
                 std::to_string(k));
    }
    check_isometry(op, tol);
    scatter(labels, op * gather(labels));
}

void PureState::apply_isometry(
    const Mat &op, const std::vector<std::string> &inputs, const std::vector<Register> &outputs, double tol) {
    size_t k_in = 1;
    for (const auto &l : inputs) {
        k_in *= dim(l);
    }
    size_t k_out = product(outputs);
    if ((size_t)op.cols() != k_in || (size_t)op.rows() != k_out) {
        fail(ErrorCode::kDimMismatch, "isometry shape does not match its input and output registers");
    }
    check_isometry(op, tol);
    Mat result = op * gather(inputs);
    std::vector<Register> regs = outputs;
    std::vector<size_t> in_pos = positions(inputs);
    for (size_t i = 0; i < regs_.size(); i++) {
        if (std::find(in_pos.begin(), in_pos.end(), i) == in_pos.end()) {
            regs.push_back(regs_[i]);
        }
    }
    Vec amps(result.size());
    for (Eigen::Index r = 0; r < result.rows(); r++) {
        amps.segment(r * result.cols(), result.cols()) = result.row(r).transpose();
    }
    *this = PureState(std::move(regs), std::move(amps));
}

void PureState::apply_permutation(const std::vector<size_t> &perm, const std::vector<std::string> &labels) {
    size_t k = 1;
    for (const auto &l : labels) {
        k *= dim(l);
    }
    if (perm.size() != k) {
        fail(ErrorCode::kDimMismatch, "permutation length does not match the registers");
    }
    std::vector<bool> hit(k, false);
    for (size_t v : perm) {
        if (v >= k || hit[v]) {
            fail(ErrorCode::kNonIsometry, "map is not a permutation of basis states");
        }
        hit[v] = true;
    }
    Mat block = gather(labels);
    Mat out(block.rows(), block.cols());
    for (size_t i = 0; i < k; i++) {
        out.row((Eigen::Index)perm[i]) = block.row((Eigen::Index)i);
    }
    scatter(labels, out);
}

void PureState::apply_diagonal(const Vec &diag, const std::vector<std::string> &labels) {
    Mat block = gather(labels);
    if (diag.size() != block.rows()) {
        fail(ErrorCode::kDimMismatch, "diagonal length does not match the registers");
    }
    for (Eigen::Index i = 0; i < diag.size(); i++) {
        if (std::abs(std::abs(diag[i]) - 1.0) > 1e-10) {
            fail(ErrorCode::kNonIsometry, "diagonal entries must have unit modulus");
        }
    }
    scatter(labels, diag.asDiagonal() * block);
}

PureState PureState::contracted(const std::string &label, const Vec &bra) const {
    if ((size_t)bra.size() != dim(label)) {
        fail(ErrorCode::kDimMismatch, "measurement vector does not match register '" + label + "'");
    }
    Mat block = gather({label});
    Vec amps = (bra.adjoint() * block).transpose();
    std::vector<Register> regs;
    for (const auto &r : regs_) {
        if (r.label != label) {
            regs.push_back(r);
        }
    }
    return PureState(std::move(regs), std::move(amps));
}

PureState PureState::projected(const std::string &label, const Mat &projector) const {
    if ((size_t)projector.rows() != dim(label) || projector.rows() != projector.cols()) {
        fail(ErrorCode::kDimMismatch, "projector does not match register '" + label + "'");
    }
    PureState out = *this;
    out.scatter({label}, projector * gather({label}));
    return out;
}

Vec PureState::amplitudes_in(const std::vector<std::string> &order) const {
    if (order.size() != regs_.size()) {
        fail(ErrorCode::kDimMismatch, "order must list every register exactly once");
    }
    return gather(order).col(0);
}

void PureState::rename(const std::string &from, const std::string &to) {
    if (from == to) {
        return;
    }
    if (has(to)) {
        fail(ErrorCode::kInvalidArgument, "register '" + to + "' already exists");
    }
    regs_[position(from)].label = to;
}

void PureState::resize_register(const std::string &label, size_t new_dim, double tol) {
    size_t old_dim = dim(label);
    if (new_dim == old_dim) {
        return;
    }
    Mat block = gather({label});
    if (new_dim < old_dim) {
        double leak = block.bottomRows((Eigen::Index)(old_dim - new_dim)).cwiseAbs().maxCoeff();
        if (leak > tol) {
            fail(ErrorCode::kSupportViolation,
                 "register '" + label + "' has amplitude " + std::to_string(leak) + " outside the first " +
                     std::to_string(new_dim) + " levels");
        }
    }
    Mat resized = Mat::Zero((Eigen::Index)new_dim, block.cols());
    size_t keep = std::min(new_dim, old_dim);
    resized.topRows((Eigen::Index)keep) = block.topRows((Eigen::Index)keep);
    size_t pos = position(label);
    std::vector<Register> regs{{label, new_dim}};
    for (size_t i = 0; i < regs_.size(); i++) {
        if (i != pos) {
            regs.push_back(regs_[i]);
        }
    }
    Vec amps(resized.size());
    for (Eigen::Index r = 0; r < resized.rows(); r++) {
        amps.segment(r * resized.cols(), resized.cols()) = resized.row(r).transpose();
    }
    *this = PureState(std::move(regs), std::move(amps));
}

void PureState::scale(cplx factor) {
    amps_ *= factor;
}

Measurement Measurement::computational(size_t dim) {
    Measurement m;
    m.name_ = "computational";
    m.dim_ = dim;
    for (size_t k = 0; k < dim; k++) {
        Vec v = Vec::Zero((Eigen::Index)dim);
        v[(Eigen::Index)k] = 1;
        m.outcomes_.push_back({(int64_t)k, true, v, Mat()});
    }
    return m;
}

Measurement Measurement::zd_fourier(size_t dim) {
    Measurement m;
    m.name_ = "zd_fourier";
    m.dim_ = dim;
    double norm = 1.0 / std::sqrt((double)dim);
    for (size_t p = 0; p < dim; p++) {
        Vec v((Eigen::Index)dim);
        for (size_t x = 0; x < dim; x++) {
            v[(Eigen::Index)x] = std::polar(norm, 2 * kPi * (double)((p * x) % dim) / (double)dim);
        }
        m.outcomes_.push_back({(int64_t)p, true, v, Mat()});
    }
    return m;
}

Measurement Measurement::gf_fourier(const FieldSpec &field, size_t coordinates) {
    size_t q = field.q();
    double norm = 1.0 / std::sqrt((double)q);
    std::vector<Vec> single;
    auto elems = field.elements();
    for (const auto &z : elems) {
        Vec v((Eigen::Index)q);
        for (const auto &x : elems) {
            uint32_t tr = (x * z).trace_to_prime();
            v[(Eigen::Index)x.index()] = std::polar(norm, -2 * kPi * (double)tr / (double)field.p());
        }
        single.push_back(v);
    }
    Measurement m;
    m.name_ = "gf_fourier";
    m.dim_ = 1;
    for (size_t c = 0; c < coordinates; c++) {
        m.dim_ *= q;
    }
    for (size_t z = 0; z < m.dim_; z++) {
        Vec v = Vec::Ones(1);
        size_t rest = z;
        std::vector<size_t> digits(coordinates);
        for (size_t c = coordinates; c-- > 0;) {
            digits[c] = rest % q;
            rest /= q;
        }
        for (size_t c = 0; c < coordinates; c++) {
            Vec next(v.size() * (Eigen::Index)q);
            for (Eigen::Index i = 0; i < v.size(); i++) {
                next.segment(i * (Eigen::Index)q, (Eigen::Index)q) = v[i] * single[digits[c]];
            }
            v = std::move(next);
        }
        m.outcomes_.push_back({(int64_t)z, true, v, Mat()});
    }
    return m;
}

Measurement Measurement::pk_family(size_t dim) {
    if (dim < 2) {
        fail(ErrorCode::kDimMismatch, "the P_k family needs dimension at least 2");
    }
    Measurement m;
    m.name_ = "pk_family";
    m.dim_ = dim;
    double h = 1.0 / std::sqrt(2.0);
    Vec v0 = Vec::Zero((Eigen::Index)dim);
    Vec v1 = Vec::Zero((Eigen::Index)dim);
    v0[0] = h;
    v0[1] = h;
    v1[0] = h;
    v1[1] = -h;
    Mat rest = Mat::Identity((Eigen::Index)dim, (Eigen::Index)dim) - v0 * v0.adjoint() - v1 * v1.adjoint();
    m.outcomes_.push_back({0, true, v0, Mat()});
    m.outcomes_.push_back({1, true, v1, Mat()});
    m.outcomes_.push_back({2, false, Vec(), rest});
    return m;
}

PureState measure_outcome(const PureState &state, const std::string &label, const Measurement &m, size_t outcome) {
    if (state.dim(label) != m.dim()) {
        fail(ErrorCode::kDimMismatch,
             m.name() + " measurement of dimension " + std::to_string(m.dim()) + " on register '" + label +
                 "' of dimension " + std::to_string(state.dim(label)));
    }
    const auto &o = m.outcomes().at(outcome);
    return o.rank_one ? state.contracted(label, o.vector) : state.projected(label, o.projector);
}

std::vector<MeasurementBranch> measure(const PureState &state, const std::string &label, const Measurement &m) {
    std::vector<MeasurementBranch> out;
    for (size_t i = 0; i < m.outcomes().size(); i++) {
        PureState s = measure_outcome(state, label, m, i);
        double p = s.norm2();
        out.push_back({m.outcomes()[i].value, std::move(s), p});
    }
    return out;
}

std::vector<PureState> discard(const PureState &state, const std::string &label, double drop) {
    std::vector<PureState> out;
    for (auto &b : measure(state, label, Measurement::computational(state.dim(label)))) {
        if (b.probability >= drop) {
            out.push_back(std::move(b.state));
        }
    }
    return out;
}

DensityMatrix::DensityMatrix(std::vector<Register> registers, Mat rho) : regs_(std::move(registers)), rho_(std::move(rho)) {
    size_t n = product(regs_);
    if ((size_t)rho_.rows() != n || (size_t)rho_.cols() != n) {
        fail(ErrorCode::kDimMismatch, "density matrix shape does not match the registry");
    }
}

static std::vector<Register> registers_in(const PureState &state, const std::vector<std::string> &order) {
    std::vector<Register> regs;
    for (const auto &l : order) {
        regs.push_back({l, state.dim(l)});
    }
    return regs;
}

DensityMatrix DensityMatrix::from_pure(const PureState &state, const std::vector<std::string> &order) {
    Vec v = state.amplitudes_in(order);
    return DensityMatrix(registers_in(state, order), v * v.adjoint());
}

DensityMatrix DensityMatrix::from_branches(const std::vector<PureState> &branches, const std::vector<std::string> &order) {
    if (branches.empty()) {
        fail(ErrorCode::kInvalidArgument, "no branches to aggregate");
    }
    std::vector<Register> regs = registers_in(branches[0], order);
    size_t n = product(regs);
    Mat rho = Mat::Zero((Eigen::Index)n, (Eigen::Index)n);
    for (const auto &b : branches) {
        if ((size_t)b.total_dim() != n) {
            fail(ErrorCode::kDimMismatch, "branches carry different registries");
        }
        Vec v = b.amplitudes_in(order);
        rho.noalias() += v * v.adjoint();
    }
    return DensityMatrix(std::move(regs), std::move(rho));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix partial_trace(const PureState &state, const std::vector<std::string> &keep) {
    Mat block = state.gather(keep);
    return DensityMatrix(registers_in(state, keep), block * block.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::string> &keep) {
    const auto &regs = rho.registers();
    std::vector<size_t> pos;
    std::vector<Register> kept;
    for (const auto &l : keep) {
        auto it = std::find_if(regs.begin(), regs.end(), [&](const Register &r) {
            return r.label == l;
        });
        if (it == regs.end()) {
            fail(ErrorCode::kUnknownRegister, "no register named '" + l + "'");
        }
        pos.push_back((size_t)(it - regs.begin()));
        kept.push_back(*it);
    }
    IndexMap map = split_index(dims_of(regs), pos);
    size_t k = map.offsets.size();
    Mat out = Mat::Zero((Eigen::Index)k, (Eigen::Index)k);
    const Mat &m = rho.matrix();
    for (size_t b : map.bases) {
        for (size_t i = 0; i < k; i++) {
            for (size_t j = 0; j < k; j++) {
                out((Eigen::Index)i, (Eigen::Index)j) += m((Eigen::Index)(b + map.offsets[i]), (Eigen::Index)(b + map.offsets[j]));
            }
        }
    }
    return DensityMatrix(std::move(kept), std::move(out));
}

double fidelity(const DensityMatrix &rho, const Vec &psi) {
    if (psi.size() != rho.matrix().rows()) {
        fail(ErrorCode::kDimMismatch, "state and density matrix dimensions differ");
    }
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.matrix().rows() != b.matrix().rows()) {
        fail(ErrorCode::kDimMismatch, "density matrices have different dimensions");
    }
    Mat diff = a.matrix() - b.matrix();
    Mat herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double overlap_up_to_phase(const Vec &a, const Vec &b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::kDimMismatch, "vectors have different lengths");
    }
    double na = a.norm();
    double nb = b.norm();
    if (na == 0 || nb == 0) {
        return 0;
    }
    return std::abs(a.dot(b)) / (na * nb);
}

}  // namespace qmcast
