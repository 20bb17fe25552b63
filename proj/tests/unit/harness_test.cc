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

#include <fstream>

#include "qmcast/error.h"
#include "qmcast/harness.h"

using namespace qmcast;
using nlohmann::json;

namespace {

json base(const std::string &kind, const std::string &net) {
    return {{"kind", kind}, {"network", std::string(QMCAST_NETWORK_DIR) + "/" + net + ".json"}, {"seed", 3}};
}

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::kIoError;
}

}  // namespace

TEST(HarnessTest, StateSpecs) {
    EXPECT_NEAR(make_state("zero", 3, 0)[0].real(), 1, 1e-15);
    Vec plus = make_state("plus", 4, 0);
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(plus[i].real(), 0.5, 1e-15);
    }
    EXPECT_NEAR(std::abs(make_state("basis:2", 3, 0)[2]), 1, 1e-15);
    Vec amps = make_state("amps:3,4", 2, 0);
    EXPECT_NEAR(amps[0].real(), 0.6, 1e-15);
    Vec cplx_amps = make_state("amps:1:1,0", 2, 0);
    EXPECT_NEAR(cplx_amps[0].imag(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(make_state("random", 3, 9), make_state("random", 3, 9));
    EXPECT_NE(make_state("random", 3, 9), make_state("random", 3, 10));
    EXPECT_EQ(make_state("random:5", 3, 1), haar_state(3, 5));
    EXPECT_NEAR(haar_state(5, 2).norm(), 1, 1e-14);
    EXPECT_EQ(code_of([] { make_state("basis:3", 3, 0); }), ErrorCode::kIndexOutOfRange);
    EXPECT_EQ(code_of([] { make_state("amps:1", 3, 0); }), ErrorCode::kDimMismatch);
    EXPECT_EQ(code_of([] { make_state("amps:0,0", 2, 0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { make_state("wibble", 2, 0); }), ErrorCode::kParseError);
}

TEST(HarnessTest, ConfigValidation) {
    EXPECT_EQ(code_of([] { RunConfig::from_json(json{{"kind", "ghz"}}); }), ErrorCode::kParseError);
    EXPECT_EQ(code_of([] { RunConfig::from_json(base("teleport", "tree2")); }), ErrorCode::kInvalidArgument);
    auto cfg = RunConfig::from_json(base("clone12", "tree2"));
    EXPECT_EQ(cfg.kind, RunKind::kClone12);
    EXPECT_EQ(RunConfig::from_json(cfg.to_json()).to_json(), cfg.to_json());
}

TEST(HarnessTest, ExactParamsMustSatisfyConstraint) {
    auto doc = base("clone12", "tree2");
    doc["params"] = {{"a", 1}, {"b", 1}};
    EXPECT_EQ(code_of([&] { run(RunConfig::from_json(doc)); }), ErrorCode::kConstraintViolated);
    doc["normalize"] = true;
    EXPECT_TRUE(run(RunConfig::from_json(doc)).passed);
}

TEST(HarnessTest, GhzRunReport) {
    auto doc = base("ghz", "butterfly");
    doc["rate"] = 2;
    auto rep = run(RunConfig::from_json(doc));
    EXPECT_TRUE(rep.passed);
    EXPECT_NEAR(rep.doc["results"]["min_fidelity"].get<double>(), 1, 1e-9);
    EXPECT_EQ(rep.doc["results_digest"], fnv1a_hex(rep.doc["results"].dump()));
}

TEST(HarnessTest, RunsAreReproducible) {
    auto doc = base("clone12", "tree2");
    doc["field"] = {{"p", 3}};
    auto a = run(RunConfig::from_json(doc)), b = run(RunConfig::from_json(doc));
    EXPECT_EQ(a.doc["results_digest"], b.doc["results_digest"]);
}

TEST(HarnessTest, VerifyReportReplaysAndDetectsTampering) {
    auto doc = base("clone13", "tree3");
    auto rep = run(RunConfig::from_json(doc));
    ASSERT_TRUE(rep.passed);
    auto ok = verify_report(rep.doc);
    EXPECT_TRUE(ok["passed"].get<bool>()) << ok.dump();
    auto bad = rep.doc;
    bad["results_digest"] = "0000000000000000";
    EXPECT_FALSE(verify_report(bad)["passed"].get<bool>());
}

TEST(HarnessTest, CodeMismatchIsInconsistent) {
    auto doc = base("ghz", "tree2");
    auto other = base("ghz", "tree3");
    doc["code"] = run(RunConfig::from_json(other)).doc["code"];
    EXPECT_EQ(code_of([&] { run(RunConfig::from_json(doc)); }), ErrorCode::kInconsistent);
}

TEST(HarnessTest, CodeReportFlagsInfeasibleRates) {
    auto net = json::parse(std::ifstream(std::string(QMCAST_NETWORK_DIR) + "/butterfly.json"));
    auto ok = code_report(net, 2, 1, 2, 0);
    EXPECT_TRUE(ok["feasible"].get<bool>());
    EXPECT_FALSE(ok["code"].is_null());
    auto bad = code_report(net, 2, 1, 3, 0);
    EXPECT_FALSE(bad["feasible"].get<bool>());
    EXPECT_EQ(bad["min_cuts"]["t1"], 2);
    EXPECT_TRUE(bad["code"].is_null());
}

TEST(HarnessTest, SweepCsvShape) {
    auto cfg = RunConfig::from_json(base("clone12", "tree2"));
    std::string csv = sweep_csv(cfg, 5);
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    EXPECT_EQ(lines, 6u);
    EXPECT_EQ(csv.rfind("kind,point,", 0), 0u);
    EXPECT_EQ(csv.find(",false,"), std::string::npos);
}

TEST(HarnessTest, FnvKnownValues) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
