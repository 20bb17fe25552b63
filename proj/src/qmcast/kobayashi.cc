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

#include "qmcast/kobayashi.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "qmcast/error.h"
#include "qmcast/operators.h"

namespace qmcast {

namespace {

uint64_t ipow(uint64_t b, size_t e) {
    uint64_t r = 1;
    for (size_t i = 0; i < e; i++) {
        r *= b;
    }
    return r;
}

std::string edge_label(size_t e) {
    return "ghz.e" + std::to_string(e);
}

// Registers feeding edge e: the source register, or the in-edges of its tail.
std::vector<std::string> control_labels(const LinearMulticastCode &code, size_t e, const std::string &source) {
    const Edge &edge = code.net().edges()[e];
    if (edge.tail == code.net().source()) {
        return {source};
    }
    std::vector<std::string> out;
    for (size_t k : code.net().in_edges(edge.tail)) {
        out.push_back(edge_label(k));
    }
    return out;
}

struct Event {
    enum Kind { kAdd, kMeasure } kind;
    std::string label;
    size_t dim = 0;
    std::vector<std::string> controls;
    std::vector<size_t> perm;
    // For measurements: edge index, or SIZE_MAX for the source register.
    size_t edge = 0;
};

constexpr size_t kSourceEvent = static_cast<size_t>(-1);

}  // namespace

bool RunTranscript::edges_used_once() const {
    for (size_t u : edge_uses) {
        if (u != 1) {
            return false;
        }
    }
    return true;
}

nlohmann::json RunTranscript::to_json() const {
    return {{"edge_uses", edge_uses},
            {"edges_used_once", edges_used_once()},
            {"ledger", ledger.to_json()},
            {"recorded_branches", branch_log.size()}};
}

std::vector<size_t> source_edge_permutation(const LinearMulticastCode &code, size_t edge) {
    const Edge &e = code.net().edges().at(edge);
    if (e.tail != code.net().source()) {
        fail(ErrorCode::kEdgeNotAtSource, "edge " + std::to_string(edge) + " does not leave the source");
    }
    const FieldSpec &f = code.field();
    uint64_t q = f.q();
    uint64_t msgs = ipow(q, code.rate());
    std::vector<size_t> perm(msgs * q);
    for (uint64_t xi = 0; xi < msgs; xi++) {
        FieldVector x = vector_from_index(f, xi, code.rate());
        FieldElement fx = dot(code.local_map(edge), x);
        for (uint64_t y = 0; y < q; y++) {
            perm[xi * q + y] = xi * q + (f.element(y) + fx).index();
        }
    }
    return perm;
}

Mat build_source_edge_unitary(const LinearMulticastCode &code, size_t edge) {
    return permutation_matrix(source_edge_permutation(code, edge));
}

std::vector<size_t> intermediate_edge_permutation(const LinearMulticastCode &code, size_t edge) {
    const Edge &e = code.net().edges().at(edge);
    if (e.tail == code.net().source()) {
        fail(ErrorCode::kInvalidArgument, "edge " + std::to_string(edge) + " leaves the source");
    }
    const FieldSpec &f = code.field();
    uint64_t q = f.q();
    size_t m = code.net().in_edges(e.tail).size();
    uint64_t ins = ipow(q, m);
    std::vector<size_t> perm(ins * q);
    for (uint64_t yi = 0; yi < ins; yi++) {
        FieldElement fy = dot(code.local_map(edge), vector_from_index(f, yi, m));
        for (uint64_t y = 0; y < q; y++) {
            perm[yi * q + y] = yi * q + (f.element(y) + fy).index();
        }
    }
    return perm;
}

Mat build_intermediate_edge_unitary(const LinearMulticastCode &code, size_t edge) {
    return permutation_matrix(intermediate_edge_permutation(code, edge));
}

std::vector<size_t> target_decoder_permutation(const LinearMulticastCode &code, size_t target) {
    const FieldSpec &f = code.field();
    uint64_t q = f.q();
    size_t m = code.net().in_edges(code.net().targets().at(target)).size();
    size_t r = code.rate();
    uint64_t ins = ipow(q, m);
    uint64_t msgs = ipow(q, r);
    std::vector<size_t> perm(ins * msgs);
    for (uint64_t yi = 0; yi < ins; yi++) {
        FieldVector g = code.decode(target, vector_from_index(f, yi, m));
        for (uint64_t xi = 0; xi < msgs; xi++) {
            FieldVector x = vector_from_index(f, xi, r);
            for (size_t k = 0; k < r; k++) {
                x[k] += g[k];
            }
            perm[yi * msgs + xi] = yi * msgs + vector_index(x);
        }
    }
    return perm;
}

Mat build_target_decoder(const LinearMulticastCode &code, size_t target) {
    return permutation_matrix(target_decoder_permutation(code, target));
}

FieldVector compute_phase_correction(
    const LinearMulticastCode &code, const FieldVector &source_outcome, const std::map<size_t, FieldElement> &edge_outcomes) {
    if (source_outcome.size() != code.rate()) {
        fail(ErrorCode::kMissingOutcome, "source outcome must have r coordinates");
    }
    FieldVector c = source_outcome;
    for (size_t e = 0; e < code.net().edges().size(); e++) {
        auto it = edge_outcomes.find(e);
        if (it == edge_outcomes.end()) {
            fail(ErrorCode::kMissingOutcome, "no Fourier outcome for edge " + std::to_string(e));
        }
        const FieldVector &g = code.global_vector(e);
        for (size_t k = 0; k < c.size(); k++) {
            c[k] += it->second * g[k];
        }
    }
    return c;
}

GhzResult multicast_ghz(
    const PureState &state,
    const std::string &source,
    const LinearMulticastCode &code,
    const std::vector<std::string> &outputs,
    const GhzOptions &options) {
    const NetworkSpec &net = code.net();
    const FieldSpec &f = code.field();
    size_t r = code.rate();
    uint64_t q = f.q();
    uint64_t dim = ipow(q, r);
    if (state.dim(source) != dim) {
        fail(ErrorCode::kDimMismatch, "source register must have dimension q^r = " + std::to_string(dim));
    }
    if (outputs.size() != net.targets().size()) {
        fail(ErrorCode::kDimMismatch, "need one output register per target");
    }

    // Schedule: transmit edges in topological order, measure a node's inputs
    // once its last outgoing edge is sent, decode at a target once all of its
    // inputs have arrived and then measure those inputs.
    std::vector<size_t> order = topological_edge_order(net);
    std::vector<Event> events;
    std::map<std::string, size_t> remaining_out;
    std::map<std::string, size_t> remaining_in;
    for (const auto &v : net.nodes()) {
        remaining_out[v] = net.out_edges(v).size();
        remaining_in[v] = net.in_edges(v).size();
    }
    GhzResult result;
    result.edge_uses.assign(net.edges().size(), 0);
    for (size_t e : order) {
        const Edge &edge = net.edges()[e];
        Event add{Event::kAdd, edge_label(e), q, control_labels(code, e, source), {}, e};
        add.perm = edge.tail == net.source() ? source_edge_permutation(code, e) : intermediate_edge_permutation(code, e);
        events.push_back(std::move(add));
        result.edge_uses[e]++;
        if (--remaining_out[edge.tail] == 0) {
            if (edge.tail == net.source()) {
                events.push_back({Event::kMeasure, source, dim, {}, {}, kSourceEvent});
            } else {
                for (size_t k : net.in_edges(edge.tail)) {
                    events.push_back({Event::kMeasure, edge_label(k), q, {}, {}, k});
                }
            }
        }
        if (--remaining_in[edge.head] == 0) {
            auto it = std::find(net.targets().begin(), net.targets().end(), edge.head);
            if (it != net.targets().end()) {
                size_t i = (size_t)(it - net.targets().begin());
                Event dec{Event::kAdd, outputs[i], dim, {}, target_decoder_permutation(code, i), 0};
                for (size_t k : net.in_edges(edge.head)) {
                    dec.controls.push_back(edge_label(k));
                }
                events.push_back(std::move(dec));
                for (size_t k : net.in_edges(edge.head)) {
                    events.push_back({Event::kMeasure, edge_label(k), q, {}, {}, k});
                }
            }
        }
    }

    // The ideal output: |x> on the source becomes |x>^N on the outputs.
    size_t n = outputs.size();
    Mat fan = Mat::Zero((Eigen::Index)ipow(dim, n), (Eigen::Index)dim);
    std::vector<Register> out_regs;
    for (const auto &o : outputs) {
        out_regs.push_back({o, dim});
    }
    for (uint64_t x = 0; x < dim; x++) {
        uint64_t idx = 0;
        for (size_t i = 0; i < n; i++) {
            idx = idx * dim + x;
        }
        fan((Eigen::Index)idx, (Eigen::Index)x) = 1;
    }
    PureState ideal = state;
    ideal.apply_isometry(fan, {source}, out_regs);

    Measurement source_basis = Measurement::gf_fourier(f, r);
    Measurement edge_basis = Measurement::gf_fourier(f, 1);

    uint64_t leaves = dim * ipow(q, net.edges().size());
    result.exhaustive = leaves <= options.exact_leaf_limit;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::map<std::string, int64_t> outcomes;
    std::function<void(size_t, PureState)> walk = [&](size_t ev, PureState s) {
        if (ev == events.size()) {
            FieldVector zs = vector_from_index(f, (uint64_t)outcomes.at("ghz.s"), r);
            std::map<size_t, FieldElement> ze;
            for (size_t e = 0; e < net.edges().size(); e++) {
                ze.emplace(e, f.element((uint64_t)outcomes.at(edge_label(e))));
            }
            FieldVector c = compute_phase_correction(code, zs, ze);
            s.apply_diagonal(gf_z_diagonal(c), {outputs[0]});
            double ov = overlap_up_to_phase(ideal.amplitudes(), s.amplitudes_in(ideal.labels()));
            result.min_overlap = std::min(result.min_overlap, ov);
            result.leaves.push_back({outcomes, std::move(s), ov});
            return;
        }
        const Event &event = events[ev];
        if (event.kind == Event::kAdd) {
            Vec zero = Vec::Zero((Eigen::Index)event.dim);
            zero[0] = 1;
            s.append({event.label, event.dim}, zero);
            std::vector<std::string> regs = event.controls;
            regs.push_back(event.label);
            s.apply_permutation(event.perm, regs);
            walk(ev + 1, std::move(s));
            return;
        }
        const Measurement &basis = event.edge == kSourceEvent ? source_basis : edge_basis;
        std::string key = event.edge == kSourceEvent ? "ghz.s" : edge_label(event.edge);
        if (result.exhaustive) {
            for (size_t o = 0; o < basis.outcomes().size(); o++) {
                PureState next = measure_outcome(s, event.label, basis, o);
                if (next.norm2() < 1e-24) {
                    continue;
                }
                outcomes[key] = (int64_t)o;
                walk(ev + 1, std::move(next));
            }
        } else {
            auto branches = measure(s, event.label, basis);
            double total = 0;
            for (const auto &b : branches) {
                total += b.probability;
            }
            double u = uniform(rng) * total;
            size_t pick = branches.size() - 1;
            for (size_t o = 0; o < branches.size(); o++) {
                if (u < branches[o].probability) {
                    pick = o;
                    break;
                }
                u -= branches[o].probability;
            }
            outcomes[key] = branches[pick].outcome;
            walk(ev + 1, std::move(branches[pick].state));
        }
    };

    size_t runs = result.exhaustive ? 1 : options.samples;
    for (size_t i = 0; i < runs; i++) {
        outcomes.clear();
        walk(0, state);
    }
    return result;
}

std::vector<Branch> multicast_branch(
    const Branch &branch,
    const std::string &source,
    const LinearMulticastCode &code,
    const std::vector<std::string> &outputs,
    const GhzOptions &options,
    GhzResult *stats) {
    GhzResult res = multicast_ghz(branch.state, source, code, outputs, options);
    double weight = branch.state.norm2();
    std::vector<Branch> leaves;
    for (auto &leaf : res.leaves) {
        Branch b{std::move(leaf.state), branch.outcomes};
        if (!res.exhaustive && b.state.norm2() > 0) {
            b.state.scale(std::sqrt(weight / (double)res.leaves.size() / b.state.norm2()));
        }
        for (const auto &[k, v] : leaf.outcomes) {
            b.outcomes[k] = v;
        }
        leaves.push_back(std::move(b));
    }
    res.leaves.clear();
    if (stats != nullptr) {
        stats->exhaustive = stats->exhaustive && res.exhaustive;
        stats->min_overlap = std::min(stats->min_overlap, res.min_overlap);
        stats->edge_uses = res.edge_uses;
    }
    auto merged = merge_equivalent(std::move(leaves), options.tol);
    for (auto &b : merged) {
        for (auto it = b.outcomes.begin(); it != b.outcomes.end();) {
            it = it->first.rfind("ghz.", 0) == 0 ? b.outcomes.erase(it) : std::next(it);
        }
    }
    return merged;
}

Protocol1Result run_protocol1(const LinearMulticastCode &code, const Vec &psi, const GhzOptions &options) {
    uint64_t dim = ipow(code.field().q(), code.rate());
    if ((uint64_t)psi.size() != dim) {
        fail(ErrorCode::kDimMismatch, "input must have dimension q^r = " + std::to_string(dim));
    }
    Protocol1Result out;
    for (size_t i = 0; i < code.net().targets().size(); i++) {
        out.outputs.push_back("V" + std::to_string(i + 1));
    }
    out.ghz = multicast_ghz(PureState({{"S", dim}}, psi), "S", code, out.outputs, options);
    out.transcript.edge_uses = out.ghz.edge_uses;
    for (const auto &leaf : out.ghz.leaves) {
        out.transcript.branch_log.push_back(leaf.outcomes);
    }
    return out;
}

}  // namespace qmcast
