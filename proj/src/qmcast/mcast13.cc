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

#include "qmcast/mcast13.h"

#include <algorithm>
#include <cmath>

#include "qmcast/error.h"
#include "qmcast/operators.h"
#include "qmcast/teleport.h"

namespace qmcast {

namespace {

Eigen::Index idx3(size_t a, size_t b, size_t c, size_t n) {
    return (Eigen::Index)((a * n + b) * n + c);
}

Vec unit(size_t n, Eigen::Index at) {
    Vec v = Vec::Zero((Eigen::Index)n);
    v[at] = 1;
    return v;
}

Vec normalized_or_fail(Vec v, const char *what) {
    double n = v.norm();
    if (n < 1e-12) {
        fail(ErrorCode::kDegenerateParams, std::string(what) + " has zero norm");
    }
    return v / n;
}

void check_outcomes(size_t r, size_t s, size_t d) {
    if (r >= d || s >= d) {
        fail(ErrorCode::kIndexOutOfRange, "ancilla outcome out of range");
    }
}

// Z_d^power padded to an m-level register.
Vec phase_diagonal(size_t d, size_t m, int64_t power) {
    Vec v((Eigen::Index)m);
    for (size_t x = 0; x < m; x++) {
        int64_t e = (power % (int64_t)d) * (int64_t)x % (int64_t)d;
        v[(Eigen::Index)x] = std::polar(1.0, 2 * M_PI * (double)e / (double)d);
    }
    return v;
}

const char *kDistinct = "r!=s";
const char *kEqual = "r=s";

}  // namespace

size_t resource_dim(size_t d) {
    return std::max<size_t>(d, 3);
}

Mat build_u2(size_t r, size_t s, const CloneParams13 &params) {
    size_t d = params.d();
    check_outcomes(r, s, d);
    if (r == s) {
        fail(ErrorCode::kInvalidArgument, "U2 needs r != s; use the primed form");
    }
    double al = params.alpha(), be = params.beta(), ga = params.gamma();
    size_t n = d * d * d;
    std::vector<Vec> in, out;
    for (size_t j = 0; j < d; j++) {
        if (j == r || j == s) {
            continue;
        }
        Vec v = Vec::Zero((Eigen::Index)n);
        v[idx3(j, r, s, d)] += al;
        v[idx3(r, j, s, d)] += be;
        v[idx3(r, s, j, d)] += ga;
        v[idx3(j, s, r, d)] += al;
        v[idx3(s, j, r, d)] += be;
        v[idx3(s, r, j, d)] += ga;
        in.push_back(normalized_or_fail(v, "U2 j-sector vector"));
        out.push_back(unit(n, idx3(j, 0, 0, d)));
    }
    for (auto [x, y] : {std::pair{r, s}, std::pair{s, r}}) {
        Vec v = Vec::Zero((Eigen::Index)n);
        v[idx3(x, x, y, d)] += al + be;
        v[idx3(y, x, x, d)] += be + ga;
        v[idx3(x, y, x, d)] += ga + al;
        in.push_back(normalized_or_fail(v, "U2 pair vector"));
        out.push_back(unit(n, idx3(x, 0, 0, d)));
    }
    return complete_unitary(in, out, n);
}

Mat build_u2_prime(size_t r, const CloneParams13 &params) {
    size_t d = params.d();
    check_outcomes(r, r, d);
    size_t n = d * d * d;
    std::vector<Vec> in, out;
    for (size_t j = 0; j < d; j++) {
        if (j == r) {
            in.push_back(unit(n, idx3(r, r, r, d)));
        } else {
            Vec v = Vec::Zero((Eigen::Index)n);
            v[idx3(j, r, r, d)] = params.alpha();
            v[idx3(r, j, r, d)] = params.beta();
            v[idx3(r, r, j, d)] = params.gamma();
            in.push_back(normalized_or_fail(v, "U2' vector"));
        }
        out.push_back(unit(n, idx3(j, 0, 0, d)));
    }
    return complete_unitary(in, out, n);
}

std::vector<size_t> pinned_permutation(const std::vector<size_t> &pinned, size_t m) {
    if (pinned.size() > m) {
        fail(ErrorCode::kDimMismatch, "more pinned values than levels");
    }
    std::vector<bool> used(m, false);
    for (size_t v : pinned) {
        if (v >= m || used[v]) {
            fail(ErrorCode::kInvalidArgument, "pinned values must be distinct and below m");
        }
        used[v] = true;
    }
    std::vector<size_t> perm = pinned;
    for (size_t v = 0; v < m; v++) {
        if (!used[v]) {
            perm.push_back(v);
        }
    }
    return perm;
}

StepUnitaries13 build_step_unitaries_13(size_t r, size_t s, const CloneParams13 &params, bool omit_swap) {
    size_t d = params.d();
    check_outcomes(r, s, d);
    size_t m = resource_dim(d);
    bool distinct = r != s;
    StepUnitaries13 u{d, m, distinct ? size_t{3} : size_t{2}, {}, {}, {}, {}};

    std::map<size_t, Mat> b5, b6, b7;
    Mat swap = Mat::Zero((Eigen::Index)(m * m), (Eigen::Index)(m * m));
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < m; j++) {
            swap((Eigen::Index)(i * m + j), (Eigen::Index)(j * m + i)) = 1;
        }
    }
    for (size_t j = 0; j < d; j++) {
        if (j == r || j == s) {
            continue;
        }
        auto pinned = distinct ? std::vector<size_t>{j, r, s} : std::vector<size_t>{j, r};
        b5[j] = permutation_matrix(pinned_permutation(pinned, m));
    }
    if (!omit_swap) {
        b6[r] = swap;
        b6[s] = swap;
    }
    if (distinct) {
        b7[r] = permutation_matrix(pinned_permutation({r, s}, m));
        b7[s] = permutation_matrix(pinned_permutation({s, r}, m));
    } else {
        b7[r] = pauli_x(m, (int64_t)r);
    }
    u.u5 = controlled(d, m, b5);
    u.u6 = controlled(d, m * m, b6);
    u.u7 = controlled(d, m, b7);

    size_t w = u.n_width;
    size_t n = w * w * w;
    std::vector<Vec> in(2, Vec::Zero((Eigen::Index)n));
    if (distinct) {
        auto pp = params.primed_pairs();
        auto ps = params.primed_six();
        in[0][idx3(0, 0, 1, w)] = pp[0];
        in[0][idx3(1, 0, 0, w)] = pp[1];
        in[0][idx3(0, 1, 0, w)] = pp[2];
        in[1][idx3(0, 1, 2, w)] = in[1][idx3(0, 2, 1, w)] = ps[0];
        in[1][idx3(1, 0, 2, w)] = in[1][idx3(2, 0, 1, w)] = ps[1];
        in[1][idx3(1, 2, 0, w)] = in[1][idx3(2, 1, 0, w)] = ps[2];
    } else {
        auto pu = params.primed_unit();
        in[0][idx3(0, 0, 0, w)] = 1;
        in[1][idx3(0, 1, 1, w)] = pu[0];
        in[1][idx3(1, 0, 1, w)] = pu[1];
        in[1][idx3(1, 1, 0, w)] = pu[2];
    }
    u.u8 = complete_unitary(in, {unit(n, idx3(0, 0, 0, w)), unit(n, idx3(1, 0, 0, w))}, n);
    return u;
}

Vec build_u9(size_t r, size_t s, size_t d, int64_t k) {
    check_outcomes(r, s, d);
    Vec v = Vec::Ones((Eigen::Index)d);
    if (k % 2 != 0) {
        v[(Eigen::Index)r] = -1;
        v[(Eigen::Index)s] = -1;
    }
    return v;
}

TargetResources prepare_target_resources(
    bool distinct, const CloneParams13 &params, EbitLedger &ledger, const std::vector<std::string> &targets) {
    if (targets.size() != 3) {
        fail(ErrorCode::kInvalidArgument, "resource states need three targets");
    }
    size_t m = resource_dim(params.d());
    const std::string &t1 = targets[0];

    // Build a three-party state at t1, then teleport shares two and three out.
    auto distribute = [&](const std::string &name, size_t width, const Vec &amps) {
        PureState st({{name + "1", width}, {name + "2~", width}, {name + "3~", width}}, amps);
        st = teleport(st, name + "2~", name + "2", ledger, t1, targets[1]);
        st = teleport(st, name + "3~", name + "3", ledger, t1, targets[2]);
        for (int i = 1; i <= 3; i++) {
            st.resize_register(name + std::to_string(i), m);
        }
        return PureState(
            {{name + "1", m}, {name + "2", m}, {name + "3", m}},
            st.amplitudes_in({name + "1", name + "2", name + "3"}));
    };

    if (distinct) {
        auto ps = params.primed_six();
        auto pp = params.primed_pairs();
        Vec mv = Vec::Zero(27);
        mv[idx3(0, 1, 2, 3)] = mv[idx3(0, 2, 1, 3)] = ps[0];
        mv[idx3(1, 0, 2, 3)] = mv[idx3(2, 0, 1, 3)] = ps[1];
        mv[idx3(1, 2, 0, 3)] = mv[idx3(2, 1, 0, 3)] = ps[2];
        Vec nv = Vec::Zero(8);
        nv[idx3(0, 0, 1, 2)] = pp[0];
        nv[idx3(1, 0, 0, 2)] = pp[1];
        nv[idx3(0, 1, 0, 2)] = pp[2];
        return {distribute("M", 3, mv), distribute("N", 2, nv)};
    }
    auto pu = params.primed_unit();
    Vec mv = Vec::Zero(8);
    mv[idx3(0, 1, 1, 2)] = pu[0];
    mv[idx3(1, 0, 1, 2)] = pu[1];
    mv[idx3(1, 1, 0, 2)] = pu[2];
    return {distribute("M", 2, mv), PureState::basis({{"N1", m}, {"N2", m}, {"N3", m}}, {0, 0, 0})};
}

Protocol3Outcome run_protocol3(const Protocol3Config &cfg) {
    const CloneParams13 &p = cfg.params;
    const NetworkSpec &net = cfg.code.net();
    size_t d = p.d();
    size_t q_r = 1;
    for (size_t i = 0; i < cfg.code.rate(); i++) {
        q_r *= cfg.code.field().q();
    }
    if (q_r != d) {
        fail(ErrorCode::kDimMismatch, "clone dimension must equal q^r");
    }
    if (cfg.fault != ProtocolFault::kNone && cfg.fault != ProtocolFault::kOmitU6Swap) {
        fail(ErrorCode::kInvalidArgument, std::string("fault '") + fault_name(cfg.fault) +
                                              "' only exists in the two-clone protocol");
    }
    if (net.targets().size() != 3) {
        fail(ErrorCode::kInvalidArgument, "the three-clone protocol needs exactly three targets");
    }
    if ((size_t)cfg.psi.size() != d || std::abs(cfg.psi.norm() - 1) > 1e-9) {
        fail(ErrorCode::kInvalidArgument, "input must be a normalized vector of dimension d");
    }
    const auto &tg = net.targets();
    const double tol = cfg.ghz.tol;
    const size_t m = resource_dim(d);
    const std::vector<std::string> rs_keys{"r", "s"};
    const std::vector<std::string> outs{"D", "E", "F"};
    const std::vector<std::string> ms{"M1", "M2", "M3"};
    const std::vector<std::string> ns{"N1", "N2", "N3"};

    Protocol3Outcome out;

    // Steps 1-3.
    PureState start({{"A", d}}, cfg.psi);
    start.apply_isometry(isometry_13(p), {"A"}, {{"A", d}, {"B", d}, {"C", d}, {"R", d}, {"S", d}});
    std::vector<Branch> branches = measure_branches({Branch{start, {}}}, "R", Measurement::computational(d), "r");
    branches = measure_branches(branches, "S", Measurement::computational(d), "s");
    std::map<std::pair<size_t, size_t>, StepUnitaries13> steps;
    {
        std::vector<Branch> next;
        for (auto &b : branches) {
            size_t r = (size_t)b.outcomes.at("r"), s = (size_t)b.outcomes.at("s");
            b.state.apply(r == s ? build_u2_prime(r, p) : build_u2(r, s, p), {"A", "B", "C"});
            for (auto &sb : discard(b.state, "B")) {
                for (auto &sc : discard(sb, "C")) {
                    next.push_back({std::move(sc), b.outcomes});
                }
            }
            steps.try_emplace({r, s}, build_step_unitaries_13(r, s, p, cfg.fault == ProtocolFault::kOmitU6Swap));
        }
        branches = merge_within(std::move(next), rs_keys, tol);
    }

    // Step 4: multicast, then the shared resource states for each path.
    {
        GhzResult stats;
        std::vector<Branch> next;
        for (const auto &b : branches) {
            for (auto &mb : multicast_branch(b, "A", cfg.code, outs, cfg.ghz, &stats)) {
                next.push_back(std::move(mb));
            }
        }
        branches = std::move(next);
        out.transcript.edge_uses = stats.edge_uses;
        out.multicast_exhaustive = stats.exhaustive;
        out.multicast_min_overlap = stats.min_overlap;
    }
    const double pair_budget = 1 + 2 * std::log2(3.0);
    std::map<bool, TargetResources> resources;
    for (bool distinct : {true, false}) {
        EbitLedger ledger;
        ledger.set_budget(tg[0], tg[1], pair_budget);
        ledger.set_budget(tg[0], tg[2], pair_budget);
        resources.emplace(distinct, prepare_target_resources(distinct, p, ledger, tg));
        out.path_ledgers.emplace(distinct ? kDistinct : kEqual, std::move(ledger));
    }

    // Steps 5-7.
    for (auto &b : branches) {
        size_t r = (size_t)b.outcomes.at("r"), s = (size_t)b.outcomes.at("s");
        const auto &u = steps.at({r, s});
        const auto &res = resources.at(r != s);
        b.state = b.state.tensor(res.m_state).tensor(res.n_state);
        for (size_t i = 0; i < 3; i++) {
            b.state.apply(u.u5, {outs[i], ms[i]});
        }
        for (size_t i = 0; i < 3; i++) {
            b.state.apply(u.u6, {outs[i], ms[i], ns[i]});
        }
        for (size_t i = 0; i < 3; i++) {
            b.state.apply(u.u7, {outs[i], ms[i]});
        }
    }

    // Step 8: N2 and N3 travel to t1, where U8 folds them into N1.
    for (size_t i = 1; i <= 2; i++) {
        std::vector<Branch> next;
        std::map<std::string, EbitLedger> after = out.path_ledgers;
        for (auto &b : branches) {
            size_t r = (size_t)b.outcomes.at("r"), s = (size_t)b.outcomes.at("s");
            const char *path = r != s ? kDistinct : kEqual;
            b.state.resize_register(ns[i], steps.at({r, s}).n_width);
            EbitLedger scratch = out.path_ledgers.at(path);
            std::string tag = "tp" + std::to_string(i + 1);
            for (auto &tb : teleport_branches(b.state, ns[i], ns[i] + "@t1", scratch, tg[i], tg[0])) {
                Branch nb{std::move(tb.state), b.outcomes};
                nb.outcomes[tag + ".shift"] = tb.shift;
                nb.outcomes[tag + ".phase"] = tb.phase;
                next.push_back(std::move(nb));
            }
            after.insert_or_assign(path, scratch);
        }
        out.path_ledgers = after;
        branches = merge_within(std::move(next), rs_keys, tol);
    }
    {
        std::vector<Branch> next;
        for (auto &b : branches) {
            const auto &u = steps.at({(size_t)b.outcomes.at("r"), (size_t)b.outcomes.at("s")});
            b.state.resize_register("N1", u.n_width);
            b.state.apply(u.u8, {"N1", "N2@t1", "N3@t1"});
            for (auto &s2 : discard(b.state, "N2@t1")) {
                for (auto &s3 : discard(s2, "N3@t1")) {
                    next.push_back({std::move(s3), b.outcomes});
                }
            }
        }
        branches = merge_within(std::move(next), rs_keys, tol);
    }

    // Step 9: the P_k readout of N1 and the matching sign fix on D.
    {
        std::vector<Branch> next;
        for (const auto &b : branches) {
            size_t r = (size_t)b.outcomes.at("r"), s = (size_t)b.outcomes.at("s");
            for (auto &mb : measure(b.state, "N1", Measurement::pk_family(b.state.dim("N1")))) {
                if (mb.outcome == 2) {
                    out.max_p2_probability = std::max(out.max_p2_probability, mb.probability);
                    if (mb.probability > 1e-20) {
                        fail(ErrorCode::kSupportViolation, "the P2 outcome of N1 has nonzero probability");
                    }
                    continue;
                }
                if (mb.probability < 1e-24) {
                    continue;
                }
                Branch nb{std::move(mb.state), b.outcomes};
                nb.outcomes["k"] = mb.outcome;
                nb.state.apply_diagonal(build_u9(r, s, d, mb.outcome), {"D"});
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
    }

    // Step 10.
    branches = measure_branches(branches, "D", Measurement::zd_fourier(d), "p1");
    branches = measure_branches(branches, "E", Measurement::zd_fourier(d), "p2");
    branches = measure_branches(branches, "F", Measurement::zd_fourier(d), "p3");
    std::vector<PureState> finals;
    for (auto &b : branches) {
        int64_t total = b.outcomes.at("p1") + b.outcomes.at("p2") + b.outcomes.at("p3");
        Vec z = phase_diagonal(d, m, total);
        for (const auto &mi : ms) {
            b.state.apply_diagonal(z, {mi});
        }
        // Only the first d levels of each M_i belong to the clone space.
        Vec full = b.state.amplitudes_in(ms);
        Vec cut = Vec::Zero((Eigen::Index)(d * d * d));
        double leak = 0;
        for (size_t x = 0; x < m; x++) {
            for (size_t y = 0; y < m; y++) {
                for (size_t w = 0; w < m; w++) {
                    cplx a = full[idx3(x, y, w, m)];
                    if (x < d && y < d && w < d) {
                        cut[idx3(x, y, w, d)] = a;
                    } else {
                        leak += std::norm(a);
                    }
                }
            }
        }
        out.leakage += leak;
        b.state = PureState({{"M1", d}, {"M2", d}, {"M3", d}}, cut);
        size_t r = (size_t)b.outcomes.at("r"), s = (size_t)b.outcomes.at("s");
        Vec ref = branch_state_13(cfg.psi, p, r, s);
        double ov = overlap_up_to_phase(ref, b.state.amplitudes_in(ms));
        out.min_overlap = std::min(out.min_overlap, ov);
        finals.push_back(b.state);
        out.branches.push_back({b.outcomes, r, s, std::move(b.state), ov});
    }
    out.rho_m = DensityMatrix::from_branches(finals, ms);
    bool any_distinct = std::any_of(out.branches.begin(), out.branches.end(), [](const auto &b) { return b.r != b.s; });
    out.transcript.ledger = out.path_ledgers.at(any_distinct ? kDistinct : kEqual);
    for (const auto &b : out.branches) {
        out.transcript.branch_log.push_back(b.outcomes);
    }
    return out;
}

nlohmann::json Verify13Report::to_json() const {
    return {{"trace_distance", trace_distance},
            {"fidelities", fidelities},
            {"expected_fidelities", expected},
            {"min_branch_overlap", min_overlap},
            {"total_probability", total_probability},
            {"ebits_r_ne_s", ebits_distinct},
            {"ebits_r_eq_s", ebits_equal},
            {"max_p2_probability", max_p2_probability},
            {"leakage", leakage},
            {"edges_used_once", edges_once},
            {"passed", passed}};
}

Verify13Report verify_13(const Protocol3Outcome &outcome, const Protocol3Config &cfg, double tol) {
    Verify13Report rep{};
    DensityMatrix oracle = channel_13_oracle(cfg.psi, cfg.params);
    rep.trace_distance = trace_distance(outcome.rho_m, oracle);
    auto f = clone_fidelities(outcome.rho_m, cfg.psi);
    rep.expected = analytic_fidelities_13(cfg.params);
    bool fid_ok = true;
    double ctol = outcome.multicast_exhaustive ? tol : 1e-6;
    for (size_t i = 0; i < 3; i++) {
        rep.fidelities[i] = f.at(i);
        fid_ok = fid_ok && std::abs(rep.fidelities[i] - rep.expected[i]) < ctol;
    }
    rep.min_overlap = outcome.min_overlap;
    rep.total_probability = outcome.rho_m.trace().real();
    rep.ebits_distinct = outcome.path_ledgers.at(kDistinct).total_used();
    rep.ebits_equal = outcome.path_ledgers.at(kEqual).total_used();
    rep.max_p2_probability = outcome.max_p2_probability;
    rep.leakage = outcome.leakage;
    rep.edges_once = outcome.transcript.edges_used_once();
    double cap = 2 + 4 * std::log2(3.0);
    rep.passed = rep.trace_distance < ctol && fid_ok && rep.min_overlap >= 1 - tol &&
                 std::abs(rep.total_probability - 1) < ctol && std::abs(rep.ebits_distinct - cap) < 1e-9 &&
                 rep.ebits_equal <= cap + 1e-12 && rep.max_p2_probability <= 1e-20 && rep.leakage < 1e-10 && rep.edges_once;
    return rep;
}

}  // namespace qmcast
