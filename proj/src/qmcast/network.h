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

#ifndef QMCAST_NETWORK_H
#define QMCAST_NETWORK_H

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmcast {

struct Edge {
    std::string tail;
    std::string head;
};

/// An acyclic directed network with one source and at least one target.
/// Parallel edges are allowed and are told apart by their position in the
/// edge list. Instances are validated on construction and never change.
class NetworkSpec {
   public:
    NetworkSpec(
        std::vector<std::string> nodes, std::vector<Edge> edges, std::string source, std::vector<std::string> targets);

    static NetworkSpec parse(const std::string &text);
    static NetworkSpec from_json(const nlohmann::json &doc);
    static NetworkSpec load(const std::string &path);
    nlohmann::json to_json() const;

    const std::vector<std::string> &nodes() const {
        return nodes_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const std::string &source() const {
        return source_;
    }
    const std::vector<std::string> &targets() const {
        return targets_;
    }

    bool has_node(const std::string &node) const;
    /// Position of `node` in targets(); throws UnknownTarget otherwise.
    size_t target_index(const std::string &node) const;
    /// Edges entering / leaving `node`, ascending by edge index.
    const std::vector<size_t> &in_edges(const std::string &node) const;
    const std::vector<size_t> &out_edges(const std::string &node) const;

   private:
    size_t node_index(const std::string &node) const;

    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::string source_;
    std::vector<std::string> targets_;
    std::vector<std::vector<size_t>> in_;
    std::vector<std::vector<size_t>> out_;
};

/// Total order on edge indices extending "(u,v) before (v,w)". Among edges that
/// are ready at the same time the lowest index goes first.
std::vector<size_t> topological_edge_order(const NetworkSpec &net);

/// Size of a minimum source/target edge cut with unit capacities.
size_t min_cut(const NetworkSpec &net, const std::string &target);

}  // namespace qmcast

#endif
