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

#include "qmcast/classical_code.h"

#include <random>

#include "qmcast/error.h"

namespace qmcast {

namespace {

FieldMatrix incoming_matrix(const LinearMulticastCode &code, size_t target) {
    const auto &in = code.net().in_edges(code.net().targets()[target]);
    FieldMatrix y(code.field(), in.size(), code.rate());
    for (size_t j = 0; j < in.size(); j++) {
        for (size_t c = 0; c < code.rate(); c++) {
            y.at(j, c) = code.global_vector(in[j])[c];
        }
    }
    return y;
}

}  // namespace

LinearMulticastCode::LinearMulticastCode(NetworkSpec net, FieldSpec field, size_t rate)
    : net_(std::move(net)), field_(std::move(field)), rate_(rate) {
}

void LinearMulticastCode::derive_global_vectors() {
    const auto &edges = net_.edges();
    global_.assign(edges.size(), FieldVector(rate_, field_.zero()));
    for (size_t e : topological_edge_order(net_)) {
        const FieldVector &f = local_maps_[e];
        if (edges[e].tail == net_.source()) {
            global_[e] = f;
            continue;
        }
        const auto &in = net_.in_edges(edges[e].tail);
        FieldVector g(rate_, field_.zero());
        for (size_t j = 0; j < in.size(); j++) {
            for (size_t c = 0; c < rate_; c++) {
                g[c] += f[j] * global_[in[j]][c];
            }
        }
        global_[e] = std::move(g);
    }
}

size_t LinearMulticastCode::target_rank(size_t target) const {
    return rank(incoming_matrix(*this, target));
}

LinearMulticastCode LinearMulticastCode::from_local_maps(
    const NetworkSpec &net, size_t rate, const FieldSpec &field, std::vector<FieldVector> local_maps) {
    if (rate == 0) {
        fail(ErrorCode::kInvalidArgument, "source rate must be at least 1");
    }
    if (local_maps.size() != net.edges().size()) {
        fail(ErrorCode::kDimMismatch, "need one local map per edge");
    }
    for (size_t e = 0; e < local_maps.size(); e++) {
        const Edge &edge = net.edges()[e];
        size_t want = edge.tail == net.source() ? rate : net.in_edges(edge.tail).size();
        if (local_maps[e].size() != want) {
            fail(ErrorCode::kDimMismatch,
                 "local map of edge " + std::to_string(e) + " has length " + std::to_string(local_maps[e].size()) +
                     ", expected " + std::to_string(want));
        }
        for (const auto &c : local_maps[e]) {
            if (c.spec() != field) {
                fail(ErrorCode::kSpecMismatch, "local map coefficient from a different field");
            }
        }
    }

    LinearMulticastCode code(net, field, rate);
    code.local_maps_ = std::move(local_maps);
    code.derive_global_vectors();

    for (size_t i = 0; i < net.targets().size(); i++) {
        FieldMatrix y = incoming_matrix(code, i);
        if (rank(y) < rate) {
            fail(ErrorCode::kUnsolvableCode,
                 "target '" + net.targets()[i] + "' sees rank " + std::to_string(rank(y)) + " < " +
                     std::to_string(rate));
        }
        // Row k of the decoder solves Y^T g = e_k, so that decoder * Y = I_r.
        FieldMatrix yt = y.transposed();
        FieldMatrix g(field, rate, y.rows());
        for (size_t k = 0; k < rate; k++) {
            FieldVector unit(rate, field.zero());
            unit[k] = field.one();
            FieldVector row = solve_linear(yt, unit).x;
            for (size_t j = 0; j < y.rows(); j++) {
                g.at(k, j) = row[j];
            }
        }
        code.decoders_.push_back(std::move(g));
    }
    return code;
}

LinearMulticastCode LinearMulticastCode::construct(
    const NetworkSpec &net, size_t rate, const FieldSpec &field, uint64_t seed, size_t max_attempts) {
    if (rate == 0) {
        fail(ErrorCode::kInvalidArgument, "source rate must be at least 1");
    }
    for (const auto &t : net.targets()) {
        size_t c = min_cut(net, t);
        if (c < rate) {
            fail(ErrorCode::kInfeasibleRate,
                 "min-cut to '" + t + "' is " + std::to_string(c) + " < rate " + std::to_string(rate));
        }
    }

    std::mt19937_64 rng(seed);
    for (size_t attempt = 0; attempt < max_attempts; attempt++) {
        std::vector<FieldVector> maps;
        for (const auto &edge : net.edges()) {
            size_t len = edge.tail == net.source() ? rate : net.in_edges(edge.tail).size();
            // An all-zero map wastes the edge, so draw uniformly from the nonzero vectors.
            FieldVector f;
            bool nonzero = false;
            while (!nonzero) {
                f.clear();
                for (size_t j = 0; j < len; j++) {
                    f.push_back(field.element(rng() % field.q()));
                    nonzero = nonzero || f.back() != field.zero();
                }
            }
            maps.push_back(std::move(f));
        }
        try {
            return from_local_maps(net, rate, field, std::move(maps));
        } catch (const Error &ex) {
            if (ex.code() != ErrorCode::kUnsolvableCode) {
                throw;
            }
        }
    }
    fail(ErrorCode::kSearchExhausted,
         "no solvable code found in " + std::to_string(max_attempts) + " attempts over " + field.str() +
             "; try a larger field");
}

FieldVector LinearMulticastCode::encode(const FieldVector &x) const {
    if (x.size() != rate_) {
        fail(ErrorCode::kDimMismatch, "message length must equal the source rate");
    }
    FieldVector out(net_.edges().size(), field_.zero());
    for (size_t e = 0; e < out.size(); e++) {
        out[e] = dot(global_[e], x);
    }
    return out;
}

FieldVector LinearMulticastCode::decode(size_t target, const FieldVector &incoming) const {
    const FieldMatrix &g = decoders_.at(target);
    if (incoming.size() != g.cols()) {
        fail(ErrorCode::kDimMismatch,
             "target " + std::to_string(target) + " expects " + std::to_string(g.cols()) + " symbols");
    }
    return g * incoming;
}

static nlohmann::json indices(const FieldVector &v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &e : v) {
        out.push_back(e.index());
    }
    return out;
}

nlohmann::json LinearMulticastCode::to_json() const {
    nlohmann::json maps = nlohmann::json::array();
    for (const auto &f : local_maps_) {
        maps.push_back(indices(f));
    }
    nlohmann::json globals = nlohmann::json::array();
    for (const auto &g : global_) {
        globals.push_back(indices(g));
    }
    nlohmann::json decoders = nlohmann::json::array();
    for (const auto &g : decoders_) {
        nlohmann::json rows = nlohmann::json::array();
        for (size_t r = 0; r < g.rows(); r++) {
            rows.push_back(indices(g.row(r)));
        }
        decoders.push_back(rows);
    }
    return {
        {"field", {{"p", field_.p()}, {"t", field_.t()}, {"modulus", field_.modulus()}}},
        {"element_encoding", "index = sum_i c_i p^i over polynomial coefficients"},
        {"in_edge_order", "ascending edge-list index"},
        {"rate", rate_},
        {"network", net_.to_json()},
        {"local_maps", maps},
        {"global_vectors", globals},
        {"decoders", decoders},
    };
}

LinearMulticastCode LinearMulticastCode::from_json(const nlohmann::json &doc) {
    try {
        const auto &f = doc.at("field");
        FieldSpec field = f.contains("modulus")
                              ? FieldSpec::with_modulus(f.at("p").get<uint32_t>(), f.at("modulus").get<std::vector<uint32_t>>())
                              : FieldSpec::make(f.at("p").get<uint32_t>(), f.at("t").get<uint32_t>());
        NetworkSpec net = NetworkSpec::from_json(doc.at("network"));
        size_t rate = doc.at("rate").get<size_t>();
        std::vector<FieldVector> maps;
        for (const auto &m : doc.at("local_maps")) {
            FieldVector v;
            for (const auto &c : m) {
                v.push_back(field.element(c.get<uint64_t>()));
            }
            maps.push_back(std::move(v));
        }
        LinearMulticastCode code = from_local_maps(net, rate, field, std::move(maps));
        if (doc.contains("decoders")) {
            // A supplied decoder must actually invert the code; it then replaces
            // the derived one so replays use exactly what was exported.
            const auto &ds = doc.at("decoders");
            if (ds.size() != net.targets().size()) {
                fail(ErrorCode::kDimMismatch, "need one decoder per target");
            }
            for (size_t i = 0; i < ds.size(); i++) {
                std::vector<FieldVector> rows;
                for (const auto &row : ds[i]) {
                    FieldVector v;
                    for (const auto &c : row) {
                        v.push_back(field.element(c.get<uint64_t>()));
                    }
                    rows.push_back(std::move(v));
                }
                size_t m = net.in_edges(net.targets()[i]).size();
                if (rows.size() != rate) {
                    fail(ErrorCode::kDimMismatch, "decoder must have r rows");
                }
                FieldMatrix g = FieldMatrix::from_rows(field, rows, m);
                if (!(g * incoming_matrix(code, i) == FieldMatrix::identity(field, rate))) {
                    fail(ErrorCode::kInconsistent, "decoder " + std::to_string(i) + " does not invert the code");
                }
                code.decoders_[i] = std::move(g);
            }
        }
        return code;
    } catch (const nlohmann::json::exception &ex) {
        fail(ErrorCode::kParseError, std::string("malformed code document: ") + ex.what());
    }
}

}  // namespace qmcast
