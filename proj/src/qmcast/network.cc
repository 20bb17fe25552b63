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

#include "qmcast/network.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "qmcast/error.h"

namespace qmcast {

NetworkSpec::NetworkSpec(
    std::vector<std::string> nodes, std::vector<Edge> edges, std::string source, std::vector<std::string> targets)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), source_(std::move(source)), targets_(std::move(targets)) {
    for (size_t i = 0; i < nodes_.size(); i++) {
        for (size_t j = i + 1; j < nodes_.size(); j++) {
            if (nodes_[i] == nodes_[j]) {
                fail(ErrorCode::kParseError, "duplicate node '" + nodes_[i] + "'");
            }
        }
    }
    if (!has_node(source_)) {
        fail(ErrorCode::kParseError, "source '" + source_ + "' is not a node");
    }
    if (targets_.empty()) {
        fail(ErrorCode::kParseError, "at least one target is required");
    }
    for (size_t i = 0; i < targets_.size(); i++) {
        if (!has_node(targets_[i])) {
            fail(ErrorCode::kParseError, "target '" + targets_[i] + "' is not a node");
        }
        if (targets_[i] == source_) {
            fail(ErrorCode::kStructureViolation, "the source cannot also be a target");
        }
        for (size_t j = 0; j < i; j++) {
            if (targets_[i] == targets_[j]) {
                fail(ErrorCode::kParseError, "duplicate target '" + targets_[i] + "'");
            }
        }
    }

    in_.assign(nodes_.size(), {});
    out_.assign(nodes_.size(), {});
    for (size_t k = 0; k < edges_.size(); k++) {
        const Edge &e = edges_[k];
        if (!has_node(e.tail) || !has_node(e.head)) {
            fail(ErrorCode::kParseError, "edge " + std::to_string(k) + " references an unknown node");
        }
        out_[node_index(e.tail)].push_back(k);
        in_[node_index(e.head)].push_back(k);
    }

    // Kahn's algorithm over nodes detects cycles (including self loops).
    std::vector<size_t> indegree(nodes_.size());
    std::deque<size_t> ready;
    for (size_t v = 0; v < nodes_.size(); v++) {
        indegree[v] = in_[v].size();
        if (indegree[v] == 0) {
            ready.push_back(v);
        }
    }
    size_t seen = 0;
    while (!ready.empty()) {
        size_t v = ready.front();
        ready.pop_front();
        seen++;
        for (size_t k : out_[v]) {
            size_t h = node_index(edges_[k].head);
            if (--indegree[h] == 0) {
                ready.push_back(h);
            }
        }
    }
    if (seen != nodes_.size()) {
        fail(ErrorCode::kCyclicGraph, "the network contains a directed cycle");
    }

    if (!in_edges(source_).empty()) {
        fail(ErrorCode::kStructureViolation, "no incoming edge to the source is allowed");
    }
    for (const auto &t : targets_) {
        if (!out_edges(t).empty()) {
            fail(ErrorCode::kStructureViolation, "target '" + t + "' has an outgoing edge");
        }
    }
    for (const auto &v : nodes_) {
        bool is_target = std::find(targets_.begin(), targets_.end(), v) != targets_.end();
        if (v != source_ && !out_edges(v).empty() && in_edges(v).empty()) {
            fail(ErrorCode::kStructureViolation, "node '" + v + "' sends without receiving anything");
        }
        if (!is_target && !in_edges(v).empty() && out_edges(v).empty()) {
            fail(ErrorCode::kStructureViolation, "node '" + v + "' receives but never forwards");
        }
    }
}

NetworkSpec NetworkSpec::from_json(const nlohmann::json &doc) {
    try {
        std::vector<std::string> nodes = doc.at("nodes").get<std::vector<std::string>>();
        std::vector<Edge> edges;
        for (const auto &e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                fail(ErrorCode::kParseError, "each edge must be a [tail, head] pair");
            }
            edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
        }
        std::string source = doc.at("source").get<std::string>();
        std::vector<std::string> targets = doc.at("targets").get<std::vector<std::string>>();
        return NetworkSpec(std::move(nodes), std::move(edges), std::move(source), std::move(targets));
    } catch (const nlohmann::json::exception &ex) {
        fail(ErrorCode::kParseError, std::string("malformed network document: ") + ex.what());
    }
}

NetworkSpec NetworkSpec::parse(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        fail(ErrorCode::kParseError, std::string("network document is not valid JSON: ") + ex.what());
    }
    return from_json(doc);
}

NetworkSpec NetworkSpec::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::kIoError, "cannot open network file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

nlohmann::json NetworkSpec::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : edges_) {
        edges.push_back({e.tail, e.head});
    }
    return {{"nodes", nodes_}, {"edges", edges}, {"source", source_}, {"targets", targets_}};
}

bool NetworkSpec::has_node(const std::string &node) const {
    return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

size_t NetworkSpec::node_index(const std::string &node) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end()) {
        fail(ErrorCode::kInvalidArgument, "unknown node '" + node + "'");
    }
    return (size_t)(it - nodes_.begin());
}

size_t NetworkSpec::target_index(const std::string &node) const {
    auto it = std::find(targets_.begin(), targets_.end(), node);
    if (it == targets_.end()) {
        fail(ErrorCode::kUnknownTarget, "'" + node + "' is not a target");
    }
    return (size_t)(it - targets_.begin());
}

const std::vector<size_t> &NetworkSpec::in_edges(const std::string &node) const {
    return in_[node_index(node)];
}

const std::vector<size_t> &NetworkSpec::out_edges(const std::string &node) const {
    return out_[node_index(node)];
}

std::vector<size_t> topological_edge_order(const NetworkSpec &net) {
    const auto &edges = net.edges();
    std::vector<size_t> waiting(edges.size());
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
    for (size_t k = 0; k < edges.size(); k++) {
        waiting[k] = net.in_edges(edges[k].tail).size();
        if (waiting[k] == 0) {
            ready.push(k);
        }
    }
    std::vector<size_t> order;
    order.reserve(edges.size());
    while (!ready.empty()) {
        size_t k = ready.top();
        ready.pop();
        order.push_back(k);
        for (size_t next : net.out_edges(edges[k].head)) {
            if (--waiting[next] == 0) {
                ready.push(next);
            }
        }
    }
    return order;
}

size_t min_cut(const NetworkSpec &net, const std::string &target) {
    net.target_index(target);
    const auto &nodes = net.nodes();
    size_t n = nodes.size();
    auto idx = [&](const std::string &v) {
        return (size_t)(std::find(nodes.begin(), nodes.end(), v) - nodes.begin());
    };
    std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
    for (const auto &e : net.edges()) {
        cap[idx(e.tail)][idx(e.head)] += 1;
    }
    size_t s = idx(net.source());
    size_t t = idx(target);

    // Edmonds-Karp: repeatedly push one unit along a shortest augmenting path.
    size_t flow = 0;
    while (true) {
        std::vector<size_t> parent(n, std::numeric_limits<size_t>::max());
        parent[s] = s;
        std::deque<size_t> queue{s};
        while (!queue.empty() && parent[t] == std::numeric_limits<size_t>::max()) {
            size_t u = queue.front();
            queue.pop_front();
            for (size_t v = 0; v < n; v++) {
                if (cap[u][v] > 0 && parent[v] == std::numeric_limits<size_t>::max()) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if (parent[t] == std::numeric_limits<size_t>::max()) {
            return flow;
        }
        for (size_t v = t; v != s; v = parent[v]) {
            cap[parent[v]][v] -= 1;
            cap[v][parent[v]] += 1;
        }
        flow++;
    }
}

}  // namespace qmcast
