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

#include "qmcast/mcast12.h"

#include <cmath>

#include "qmcast/error.h"
#include "qmcast/operators.h"
#include "qmcast/teleport.h"

namespace qmcast {

namespace {

size_t wrap(int64_t v, size_t d) {
    int64_t m = (int64_t)d;
    return (size_t)(((v % m) + m) % m);
}

}  // namespace

const char *fault_name(ProtocolFault f) {
    switch (f) {
        case ProtocolFault::kNone:
            return "none";
        case ProtocolFault::kFlipUpsilonEta:
            return "flip-upsilon-eta";
        case ProtocolFault::kOmitU6Swap:
            return "omit-u6-swap";
        case ProtocolFault::kUncorrectedFlagPhase:
            return "uncorrected-flag-phase";
        case ProtocolFault::kPerTargetFourierCorrection:
            return "per-target-fourier-correction";
    }
    return "none";
}

ProtocolFault fault_from_name(const std::string &name) {
    for (auto f : {ProtocolFault::kNone, ProtocolFault::kFlipUpsilonEta, ProtocolFault::kOmitU6Swap,
                   ProtocolFault::kUncorrectedFlagPhase, ProtocolFault::kPerTargetFourierCorrection}) {
        if (name == fault_name(f)) {
            return f;
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown fault '" + name + "'");
}

Mat build_upsilon(size_t r, const CloneParams12 &params, bool flip_eta) {
    size_t d = params.d();
    if (r >= d) {
        fail(ErrorCode::kIndexOutOfRange, "outcome r out of range");
    }
    double c = params.cos_eta();
    double s = flip_eta ? -params.sin_eta() : params.sin_eta();
    auto n = (Eigen::Index)(d * d);
    Mat u = Mat::Identity(n, n);
    for (size_t j = 0; j < d; j++) {
        if (j == r) {
            continue;
        }
        auto jr = (Eigen::Index)(j * d + r);
        auto rj = (Eigen::Index)(r * d + j);
        // Rows are the images: |jr> <- c<jr| + s<rj|, |rj> <- s<jr| - c<rj|.
        u(jr, jr) = c;
        u(jr, rj) = s;
        u(rj, jr) = s;
        u(rj, rj) = -c;
    }
    return u;
}

StepUnitaries12 build_step_unitaries(size_t r, const CloneParams12 &params) {
    size_t d = params.d();
    if (r >= d) {
        fail(ErrorCode::kIndexOutOfRange, "outcome r out of range");
    }
    size_t rm = wrap((int64_t)r - 1, d);
    StepUnitaries12 out;

    std::map<size_t, Mat> v_blocks;
    for (size_t j = 0; j < d; j++) {
        if (j == r) {
            continue;
        }
        std::vector<size_t> perm(d);
        for (size_t x = 0; x < d; x++) {
            perm[x] = x == j ? rm : (x == rm ? j : x);
        }
        v_blocks[j] = permutation_matrix(perm);
    }
    out.v = controlled(d, d, v_blocks);
    out.delta = controlled(d, d, {{r, pauli_x(d, -((int64_t)r - 1))}});

    Mat sw = Mat::Identity((Eigen::Index)(2 * d), (Eigen::Index)(2 * d));
    sw.row(1).swap(sw.row(2));
    out.gamma = controlled(d, 2 * d, {{r, sw}});

    double c = params.cos_eta(), s = params.sin_eta();
    std::vector<Vec> in(4, Vec::Zero(4)), img(4, Vec::Zero(4));
    in[0][0] = img[0][0] = 1;
    in[1][3] = img[1][3] = 1;
    in[2][1] = c;
    in[2][2] = s;
    img[2][2] = 1;
    in[3][1] = s;
    in[3][2] = -c;
    img[3][1] = 1;
    out.theta = complete_unitary(in, img, 4);

    out.lambda = controlled(d, d, {{r, pauli_x(d, (int64_t)r)}});
    return out;
}

Protocol2Outcome run_protocol2(const Protocol2Config &cfg) {
    const CloneParams12 &p = cfg.params;
    const NetworkSpec &net = cfg.code.net();
    size_t d = p.d();
    size_t q_r = 1;
    for (size_t i = 0; i < cfg.code.rate(); i++) {
        q_r *= cfg.code.field().q();
    }
    if (q_r != d) {
        fail(ErrorCode::kDimMismatch, "clone dimension must equal q^r");
    }
    if (cfg.fault == ProtocolFault::kOmitU6Swap) {
        fail(ErrorCode::kInvalidArgument, "fault 'omit-u6-swap' only exists in the three-clone protocol");
    }
    if (net.targets().size() != 2) {
        fail(ErrorCode::kInvalidArgument, "the two-clone protocol needs exactly two targets");
    }
    if ((size_t)cfg.psi.size() != d || std::abs(cfg.psi.norm() - 1) > 1e-9) {
        fail(ErrorCode::kInvalidArgument, "input must be a normalized vector of dimension d");
    }
    const std::string &t1 = net.targets()[0];
    const std::string &t2 = net.targets()[1];
    const double tol = cfg.ghz.tol;

    Protocol2Outcome out;
    EbitLedger ledger;
    ledger.set_budget(t1, t2, 2.0);

    // Steps 1-3: clone at the source, read the ancilla, compress into A.
    PureState start({{"A", d}}, cfg.psi);
    start.apply_isometry(isometry_12(p), {"A"}, {{"A", d}, {"B", d}, {"M", d}});
    std::vector<Branch> branches = measure_branches({Branch{start, {}}}, "M", Measurement::computational(d), "r");
    {
        std::vector<Branch> next;
        for (auto &b : branches) {
            size_t r = (size_t)b.outcomes.at("r");
            b.state.apply(build_upsilon(r, p, cfg.fault == ProtocolFault::kFlipUpsilonEta), {"A", "B"});
            for (auto &s : discard(b.state, "B")) {
                next.push_back({std::move(s), b.outcomes});
            }
        }
        branches = merge_within(std::move(next), {"r"}, tol);
    }

    // Step 4: send A through the network as a GHZ-type state on C (t1), D (t2).
    {
        GhzResult stats;
        std::vector<Branch> next;
        for (const auto &b : branches) {
            for (auto &m : multicast_branch(b, "A", cfg.code, {"C", "D"}, cfg.ghz, &stats)) {
                next.push_back(std::move(m));
            }
        }
        branches = std::move(next);
        out.transcript.edge_uses = stats.edge_uses;
        out.multicast_exhaustive = stats.exhaustive;
        out.multicast_min_overlap = stats.min_overlap;
    }

    // Steps 5-7.
    double c = p.cos_eta(), s = p.sin_eta();
    ledger.debit(t1, t2, binary_entropy(c * c), "EF resource");
    Vec ef = Vec::Zero((Eigen::Index)(d * d));
    ef[1] = c;
    ef[(Eigen::Index)d] = s;
    std::map<size_t, StepUnitaries12> steps;
    for (size_t r = 0; r < d; r++) {
        steps.emplace(r, build_step_unitaries(r, p));
    }
    Vec ket0 = basis_vector(2, 0);
    for (auto &b : branches) {
        size_t r = (size_t)b.outcomes.at("r");
        const auto &u = steps.at(r);
        b.state = b.state.tensor(PureState({{"E", d}, {"F", d}}, ef));
        Mat shift = pauli_x(d, (int64_t)r - 1);
        b.state.apply(shift, {"E"});
        b.state.apply(shift, {"F"});
        b.state.apply(u.v, {"C", "E"});
        b.state.apply(u.v, {"D", "F"});
        b.state.apply(u.delta, {"C", "E"});
        b.state.apply(u.delta, {"D", "F"});
        b.state.append({"G", 2}, ket0);
        b.state.append({"H", 2}, ket0);
        b.state.apply(u.gamma, {"C", "E", "G"});
        b.state.apply(u.gamma, {"D", "F", "H"});
    }

    // Step 8: t2 teleports H to t1.
    {
        std::vector<Branch> next;
        EbitLedger after = ledger;
        for (const auto &b : branches) {
            EbitLedger scratch = ledger;
            for (auto &tb : teleport_branches(b.state, "H", "T1", scratch, t2, t1)) {
                Branch nb{std::move(tb.state), b.outcomes};
                nb.outcomes["tp.shift"] = tb.shift;
                nb.outcomes["tp.phase"] = tb.phase;
                next.push_back(std::move(nb));
            }
            after = scratch;
        }
        ledger = after;
        branches = merge_within(std::move(next), {"r"}, tol);
    }

    // Step 9: disentangle the flag qubits and drop T1.
    {
        std::vector<Branch> next;
        for (auto &b : branches) {
            b.state.apply(steps.at((size_t)b.outcomes.at("r")).theta, {"G", "T1"});
            for (auto &st : discard(b.state, "T1")) {
                next.push_back({std::move(st), b.outcomes});
            }
        }
        branches = merge_within(std::move(next), {"r"}, tol);
    }

    // Step 10: read G in the Fourier basis and undo its sign on C = r.
    branches = measure_branches(branches, "G", Measurement::zd_fourier(2), "k");
    for (auto &b : branches) {
        size_t r = (size_t)b.outcomes.at("r");
        if (b.outcomes.at("k") % 2 == 1 && cfg.fault != ProtocolFault::kUncorrectedFlagPhase) {
            Vec diag = Vec::Ones((Eigen::Index)d);
            diag[(Eigen::Index)r] = -1;
            b.state.apply_diagonal(diag, {"C"});
        }
        // Step 11.
        b.state.apply(steps.at(r).lambda, {"C", "E"});
        b.state.apply(steps.at(r).lambda, {"D", "F"});
    }

    // Step 12: Fourier readout of C and D, then the phase fix on E and F.
    branches = measure_branches(branches, "C", Measurement::zd_fourier(d), "p1");
    branches = measure_branches(branches, "D", Measurement::zd_fourier(d), "p2");
    std::vector<PureState> finals;
    for (auto &b : branches) {
        int64_t p1 = b.outcomes.at("p1"), p2 = b.outcomes.at("p2");
        if (cfg.fault == ProtocolFault::kPerTargetFourierCorrection) {
            b.state.apply_diagonal(pauli_z_diagonal(d, p1), {"E"});
            b.state.apply_diagonal(pauli_z_diagonal(d, p2), {"F"});
        } else {
            b.state.apply_diagonal(pauli_z_diagonal(d, p1 + p2), {"E"});
            b.state.apply_diagonal(pauli_z_diagonal(d, p1 + p2), {"F"});
        }
        size_t r = (size_t)b.outcomes.at("r");
        Vec ref = branch_state_12(cfg.psi, p, r);
        Vec got = b.state.amplitudes_in({"E", "F"});
        double ov = overlap_up_to_phase(ref, got);
        out.min_overlap = std::min(out.min_overlap, ov);
        finals.push_back(b.state);
        out.branches.push_back({b.outcomes, r, std::move(b.state), ov});
    }
    out.rho_ef = DensityMatrix::from_branches(finals, {"E", "F"});
    out.transcript.ledger = ledger;
    for (const auto &b : out.branches) {
        out.transcript.branch_log.push_back(b.outcomes);
    }
    return out;
}

nlohmann::json Verify12Report::to_json() const {
    return {{"trace_distance", trace_distance},
            {"fidelity_e", fidelity_e},
            {"fidelity_f", fidelity_f},
            {"expected_fidelity_e", expected_e},
            {"expected_fidelity_f", expected_f},
            {"min_branch_overlap", min_overlap},
            {"total_probability", total_probability},
            {"ebits", ebits},
            {"edges_used_once", edges_once},
            {"passed", passed}};
}

Verify12Report verify_12(const Protocol2Outcome &outcome, const Protocol2Config &cfg, double tol) {
    Verify12Report rep{};
    DensityMatrix oracle = channel_12_oracle(cfg.psi, cfg.params);
    rep.trace_distance = trace_distance(outcome.rho_ef, oracle);
    auto f = clone_fidelities(outcome.rho_ef, cfg.psi);
    rep.fidelity_e = f.at(0);
    rep.fidelity_f = f.at(1);
    auto [fe, ff] = analytic_fidelities_12(cfg.params);
    rep.expected_e = fe;
    rep.expected_f = ff;
    rep.min_overlap = outcome.min_overlap;
    rep.total_probability = outcome.rho_ef.trace().real();
    rep.ebits = outcome.transcript.ledger.total_used();
    rep.edges_once = outcome.transcript.edges_used_once();
    // Sampled multicast only estimates the mixture, so the channel checks loosen.
    double ctol = outcome.multicast_exhaustive ? tol : 1e-6;
    rep.passed = rep.trace_distance < ctol && std::abs(rep.fidelity_e - fe) < ctol &&
                 std::abs(rep.fidelity_f - ff) < ctol && rep.min_overlap >= 1 - tol &&
                 std::abs(rep.total_probability - 1) < ctol && rep.ebits <= 2 + 1e-12 && rep.edges_once;
    return rep;
}

}  // namespace qmcast
