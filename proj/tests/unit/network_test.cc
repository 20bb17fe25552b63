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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qmcast/error.h"
#include "qmcast/network.h"

using namespace qmcast;

namespace {

std::string net_dir() {
    return QMCAST_NETWORK_DIR;
}

size_t oracle_cut(const NetworkSpec &net, const std::string &target) {
    auto idx = [&](const std::string &n) {
        return (size_t)(std::find(net.nodes().begin(), net.nodes().end(), n) - net.nodes().begin());
    };
    std::vector<std::pair<size_t, size_t>> edges;
    for (const auto &e : net.edges()) {
        edges.emplace_back(idx(e.tail), idx(e.head));
    }
    return oracle::brute_force_min_cut(net.nodes().size(), edges, idx(net.source()), idx(target));
}

ErrorCode parse_error(const std::string &text) {
    try {
        NetworkSpec::parse(text);
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "parse accepted: " << text;
    return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(NetworkTest, ShippedNetworksMatchBruteForceCuts) {
    for (const char *name : {"butterfly", "chain", "tree2", "tree3"}) {
        NetworkSpec net = NetworkSpec::load(net_dir() + "/" + name + ".json");
        for (const auto &t : net.targets()) {
            EXPECT_EQ(min_cut(net, t), oracle_cut(net, t)) << name << " " << t;
        }
    }
}

TEST(NetworkTest, ButterflyCutIsTwo) {
    NetworkSpec net = NetworkSpec::load(net_dir() + "/butterfly.json");
    EXPECT_EQ(min_cut(net, "t1"), 2u);
    EXPECT_EQ(min_cut(net, "t2"), 2u);
    EXPECT_EQ(net.target_index("t2"), 1u);
}

TEST(NetworkTest, TopologicalOrderRespectsEdges) {
    NetworkSpec net = NetworkSpec::load(net_dir() + "/butterfly.json");
    auto order = topological_edge_order(net);
    ASSERT_EQ(order.size(), net.edges().size());
    std::vector<size_t> pos(order.size());
    for (size_t i = 0; i < order.size(); i++) {
        pos[order[i]] = i;
    }
    for (size_t e = 0; e < net.edges().size(); e++) {
        for (size_t f : net.out_edges(net.edges()[e].head)) {
            EXPECT_LT(pos[e], pos[f]);
        }
    }
}

TEST(NetworkTest, RoundTripsThroughJson) {
    NetworkSpec net = NetworkSpec::load(net_dir() + "/tree3.json");
    NetworkSpec again = NetworkSpec::from_json(net.to_json());
    EXPECT_EQ(again.to_json(), net.to_json());
}

TEST(NetworkTest, RandomDagsAgreeWithBruteForce) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 4 + rng() % 3;
        std::vector<std::string> nodes;
        for (size_t i = 0; i < n; i++) {
            nodes.push_back("n" + std::to_string(i));
        }
        std::vector<Edge> edges;
        // Forward edges only; parallel edges are allowed.
        for (size_t i = 0; i + 1 < n; i++) {
            edges.push_back({nodes[i], nodes[i + 1]});
        }
        for (int k = 0; k < 6; k++) {
            size_t a = rng() % (n - 1);
            size_t b = a + 1 + rng() % (n - 1 - a);
            edges.push_back({nodes[a], nodes[b]});
        }
        NetworkSpec net(nodes, edges, nodes[0], {nodes[n - 1]});
        EXPECT_EQ(min_cut(net, nodes[n - 1]), oracle_cut(net, nodes[n - 1]));
    }
}

TEST(NetworkTest, RejectsMalformedInput) {
    EXPECT_EQ(parse_error("{"), ErrorCode::kParseError);
    EXPECT_EQ(
        parse_error(R"({"nodes":["s","a","t"],"edges":[["s","a"],["a","t"],["t","a"]],"source":"s","targets":["t"]})"),
        ErrorCode::kCyclicGraph);
    EXPECT_EQ(
        parse_error(R"({"nodes":["s","t"],"edges":[["s","t"]],"source":"s","targets":["x"]})"),
        ErrorCode::kParseError);
    // An edge into the source violates the model.
    EXPECT_EQ(
        parse_error(R"({"nodes":["s","a","t"],"edges":[["s","a"],["a","s"],["a","t"]],"source":"s","targets":["t"]})"),
        ErrorCode::kCyclicGraph);
    // A target with an outgoing edge.
    EXPECT_EQ(
        parse_error(R"({"nodes":["s","t","u"],"edges":[["s","t"],["t","u"]],"source":"s","targets":["t","u"]})"),
        ErrorCode::kStructureViolation);
}

TEST(NetworkTest, LookupOfUnknownTarget) {
    NetworkSpec net = NetworkSpec::load(net_dir() + "/tree2.json");
    try {
        net.target_index("s");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
    }
}

TEST(NetworkTest, MissingFileIsIoError) {
    try {
        NetworkSpec::load("/nonexistent/net.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kIoError);
    }
}
