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

#include "qmcast/harness.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qmcast/error.h"
#include "qmcast/mcast13.h"
#include "qmcast/network.h"

namespace qmcast {

namespace {

using nlohmann::json;

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::kIoError, "cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &ex) {
        fail(ErrorCode::kParseError, "'" + path + "': " + ex.what());
    }
}

std::string join(const std::string &base, const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base.empty()) {
        return path;
    }
    return (std::filesystem::path(base) / p).string();
}

size_t message_dim(const LinearMulticastCode &code) {
    size_t d = 1;
    for (size_t i = 0; i < code.rate(); i++) {
        d *= code.field().q();
    }
    return d;
}

std::string matrix_digest(const Mat &m) {
    std::string text;
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            // Round so that signed zeros and last-bit noise do not change the digest.
            std::snprintf(buf, sizeof buf, "%.10f,%.10f;", m(i, j).real() + 0.0, m(i, j).imag() + 0.0);
            text += buf;
        }
    }
    return fnv1a_hex(text);
}

double param(const json &params, const char *key, double fallback) {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
}

CloneParams12 params12(const RunConfig &cfg, size_t d) {
    double a = param(cfg.params, "a", 1), b = param(cfg.params, "b", 1);
    return cfg.normalize || cfg.params.empty() ? CloneParams12::from_ratio(a, b, d) : CloneParams12::exact(a, b, d, 1e-9);
}

CloneParams13 params13(const RunConfig &cfg, size_t d) {
    double al = param(cfg.params, "alpha", 1), be = param(cfg.params, "beta", 1), ga = param(cfg.params, "gamma", 1);
    return cfg.normalize || cfg.params.empty() ? CloneParams13::from_ratio(al, be, ga, d)
                                               : CloneParams13::exact(al, be, ga, d, 1e-9);
}

json run_ghz(const RunConfig &cfg, const LinearMulticastCode &code, const Vec &psi, bool &passed) {
    Protocol1Result res = run_protocol1(code, psi, cfg.ghz);
    double sum = 0, sum2 = 0;
    for (const auto &leaf : res.ghz.leaves) {
        double f = leaf.overlap * leaf.overlap;
        sum += f;
        sum2 += f * f;
    }
    double n = (double)res.ghz.leaves.size();
    double mean = n > 0 ? sum / n : 0;
    double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0;
    passed = res.ghz.min_overlap >= 1 - cfg.ghz.tol && res.transcript.edges_used_once();
    return {{"min_fidelity", res.ghz.min_overlap * res.ghz.min_overlap},
            {"mean_fidelity", mean},
            {"standard_error", res.ghz.exhaustive ? 0.0 : std::sqrt(var / n)},
            {"branches", res.ghz.leaves.size()},
            {"exhaustive", res.ghz.exhaustive},
            {"outputs", res.outputs},
            {"transcript", res.transcript.to_json()},
            {"passed", passed}};
}

json run_clone12(const RunConfig &cfg, const LinearMulticastCode &code, const Vec &psi, bool &passed) {
    size_t d = message_dim(code);
    Protocol2Config pc{code, params12(cfg, d), psi, cfg.ghz, cfg.fault};
    Protocol2Outcome out = run_protocol2(pc);
    Verify12Report rep = verify_12(out, pc, cfg.ghz.tol);
    passed = rep.passed;
    json completions = json::object();
    for (size_t r = 0; r < d; r++) {
        auto u = build_step_unitaries(r, pc.params);
        completions["r=" + std::to_string(r)] = {{"upsilon", matrix_digest(build_upsilon(r, pc.params))},
                                                 {"theta", matrix_digest(u.theta)}};
    }
    return {{"params", pc.params.to_json()},
            {"verification", rep.to_json()},
            {"branches", out.branches.size()},
            {"multicast_exhaustive", out.multicast_exhaustive},
            {"transcript", out.transcript.to_json()},
            {"completion_digests", completions},
            {"passed", passed}};
}

json run_clone13(const RunConfig &cfg, const LinearMulticastCode &code, const Vec &psi, bool &passed) {
    size_t d = message_dim(code);
    Protocol3Config pc{code, params13(cfg, d), psi, cfg.ghz, cfg.fault};
    Protocol3Outcome out = run_protocol3(pc);
    Verify13Report rep = verify_13(out, pc, cfg.ghz.tol);
    passed = rep.passed;
    size_t m = resource_dim(d);
    json completions = json::object();
    for (size_t r = 0; r < d; r++) {
        for (size_t s = 0; s < d; s++) {
            json entry;
            entry["u2"] = matrix_digest(r == s ? build_u2_prime(r, pc.params) : build_u2(r, s, pc.params));
            entry["u8"] = matrix_digest(build_step_unitaries_13(r, s, pc.params).u8);
            json perms = json::object();
            for (size_t j = 0; j < d; j++) {
                if (j == r || j == s) {
                    continue;
                }
                auto pinned = r != s ? std::vector<size_t>{j, r, s} : std::vector<size_t>{j, r};
                perms[std::to_string(j)] = pinned_permutation(pinned, m);
            }
            entry["u5_permutations"] = perms;
            if (r != s) {
                entry["u7_permutations"] = {pinned_permutation({r, s}, m), pinned_permutation({s, r}, m)};
            }
            completions["r=" + std::to_string(r) + ",s=" + std::to_string(s)] = entry;
        }
    }
    json ledgers = json::object();
    for (const auto &[k, l] : out.path_ledgers) {
        ledgers[k] = l.to_json();
    }
    return {{"params", pc.params.to_json()},
            {"verification", rep.to_json()},
            {"branches", out.branches.size()},
            {"multicast_exhaustive", out.multicast_exhaustive},
            {"transcript", out.transcript.to_json()},
            {"path_ledgers", ledgers},
            {"completions", completions},
            {"passed", passed}};
}

}  // namespace

const char *kind_name(RunKind k) {
    switch (k) {
        case RunKind::kGhz:
            return "ghz";
        case RunKind::kClone12:
            return "clone12";
        case RunKind::kClone13:
            return "clone13";
    }
    return "ghz";
}

RunKind kind_from_name(const std::string &name) {
    for (auto k : {RunKind::kGhz, RunKind::kClone12, RunKind::kClone13}) {
        if (name == kind_name(k)) {
            return k;
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown run kind '" + name + "' (expected ghz, clone12 or clone13)");
}

RunConfig RunConfig::from_json(const json &doc, const std::string &base_dir) {
    RunConfig cfg;
    try {
        cfg.kind = kind_from_name(doc.at("kind").get<std::string>());
        const json &net = doc.at("network");
        cfg.network = net.is_string() ? NetworkSpec::load(join(base_dir, net.get<std::string>())).to_json()
                                      : NetworkSpec::from_json(net).to_json();
        if (doc.contains("code") && !doc.at("code").is_null()) {
            const json &code = doc.at("code");
            cfg.code = code.is_string() ? read_json_file(join(base_dir, code.get<std::string>())) : code;
        }
        if (doc.contains("field")) {
            cfg.p = doc.at("field").value("p", 2u);
            cfg.t = doc.at("field").value("t", 1u);
        }
        cfg.rate = doc.value("rate", size_t{1});
        cfg.params = doc.value("params", json::object());
        cfg.normalize = doc.value("normalize", false);
        cfg.state = doc.value("state", std::string("random"));
        cfg.seed = doc.value("seed", uint64_t{0});
        if (doc.contains("ghz")) {
            const json &g = doc.at("ghz");
            cfg.ghz.samples = g.value("samples", cfg.ghz.samples);
            cfg.ghz.exact_leaf_limit = g.value("exact_leaf_limit", cfg.ghz.exact_leaf_limit);
            cfg.ghz.tol = g.value("tol", cfg.ghz.tol);
        }
        cfg.ghz.seed = cfg.seed;
        cfg.fault = fault_from_name(doc.value("fault", std::string("none")));
    } catch (const json::exception &ex) {
        fail(ErrorCode::kParseError, std::string("run configuration: ") + ex.what());
    }
    return cfg;
}

json RunConfig::to_json() const {
    json doc = {{"kind", kind_name(kind)},
                {"network", network},
                {"field", {{"p", p}, {"t", t}}},
                {"rate", rate},
                {"params", params},
                {"normalize", normalize},
                {"state", state},
                {"seed", seed},
                {"ghz", {{"samples", ghz.samples}, {"exact_leaf_limit", ghz.exact_leaf_limit}, {"tol", ghz.tol}}},
                {"fault", fault_name(fault)}};
    if (code) {
        doc["code"] = *code;
    }
    return doc;
}

Vec haar_state(size_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Vec v((Eigen::Index)dim);
    for (size_t i = 0; i < dim; i++) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[(Eigen::Index)i] = cplx(re, im);
    }
    return v / v.norm();
}

Vec make_state(const std::string &spec, size_t dim, uint64_t seed) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "zero" && tail.empty()) {
            Vec v = Vec::Zero((Eigen::Index)dim);
            v[0] = 1;
            return v;
        }
        if (head == "plus" && tail.empty()) {
            return Vec::Constant((Eigen::Index)dim, 1 / std::sqrt((double)dim));
        }
        if (head == "basis") {
            size_t k = std::stoul(tail);
            if (k >= dim) {
                fail(ErrorCode::kIndexOutOfRange, "basis index " + tail + " >= dimension " + std::to_string(dim));
            }
            Vec v = Vec::Zero((Eigen::Index)dim);
            v[(Eigen::Index)k] = 1;
            return v;
        }
        if (head == "random") {
            return haar_state(dim, tail.empty() ? seed : std::stoull(tail));
        }
        if (head == "amps") {
            std::vector<cplx> amps;
            std::stringstream ss(tail);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto c = item.find(':');
                double re = std::stod(item.substr(0, c));
                double im = c == std::string::npos ? 0 : std::stod(item.substr(c + 1));
                amps.emplace_back(re, im);
            }
            if (amps.size() != dim) {
                fail(ErrorCode::kDimMismatch,
                     "state has " + std::to_string(amps.size()) + " amplitudes, expected " + std::to_string(dim));
            }
            Vec v = Eigen::Map<Vec>(amps.data(), (Eigen::Index)dim);
            if (v.norm() == 0) {
                fail(ErrorCode::kInvalidArgument, "state amplitudes are all zero");
            }
            return v / v.norm();
        }
    } catch (const std::logic_error &) {
        fail(ErrorCode::kParseError, "malformed state spec '" + spec + "'");
    }
    fail(ErrorCode::kParseError, "unknown state spec '" + spec + "'");
}

LinearMulticastCode resolve_code(const RunConfig &cfg) {
    if (cfg.code) {
        LinearMulticastCode code = LinearMulticastCode::from_json(*cfg.code);
        if (code.net().to_json() != cfg.network) {
            fail(ErrorCode::kInconsistent, "the supplied code was built for a different network");
        }
        return code;
    }
    NetworkSpec net = NetworkSpec::from_json(cfg.network);
    return LinearMulticastCode::construct(net, cfg.rate, FieldSpec::make(cfg.p, cfg.t), cfg.seed);
}

RunReport run(const RunConfig &cfg) {
    auto t0 = std::chrono::steady_clock::now();
    LinearMulticastCode code = resolve_code(cfg);
    Vec psi = make_state(cfg.state, message_dim(code), cfg.seed);
    bool passed = false;
    json results;
    switch (cfg.kind) {
        case RunKind::kGhz:
            results = run_ghz(cfg, code, psi, passed);
            break;
        case RunKind::kClone12:
            results = run_clone12(cfg, code, psi, passed);
            break;
        case RunKind::kClone13:
            results = run_clone13(cfg, code, psi, passed);
            break;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json doc = {{"config", cfg.to_json()},
                {"code", code.to_json()},
                {"results", results},
                {"passed", passed},
                {"seed", cfg.seed},
                {"results_digest", fnv1a_hex(results.dump())},
                {"wall_clock_ms", ms}};
    return {std::move(doc), passed};
}

json code_report(const json &network, uint32_t p, uint32_t t, size_t rate, uint64_t seed) {
    NetworkSpec net = NetworkSpec::from_json(network);
    FieldSpec field = FieldSpec::make(p, t);
    json cuts = json::object();
    bool feasible = true;
    for (const auto &tg : net.targets()) {
        size_t c = min_cut(net, tg);
        cuts[tg] = c;
        feasible = feasible && c >= rate;
    }
    json doc = {{"network", net.to_json()},
                {"field", {{"p", p}, {"t", t}}},
                {"rate", rate},
                {"seed", seed},
                {"min_cuts", cuts},
                {"feasible", feasible},
                {"code", nullptr}};
    if (feasible) {
        doc["code"] = LinearMulticastCode::construct(net, rate, field, seed).to_json();
    }
    return doc;
}

std::string sweep_csv(const RunConfig &cfg, size_t points) {
    if (cfg.kind == RunKind::kGhz) {
        fail(ErrorCode::kInvalidArgument, "sweeps need a clone12 or clone13 configuration");
    }
    if (points < 2) {
        fail(ErrorCode::kInvalidArgument, "a sweep needs at least two points");
    }
    LinearMulticastCode code = resolve_code(cfg);
    size_t d = message_dim(code);
    Vec psi = make_state(cfg.state, d, cfg.seed);
    std::ostringstream csv;
    csv << "kind,point,w1,w2,w3,analytic_1,analytic_2,analytic_3,simulated_1,simulated_2,simulated_3,"
           "max_deviation,trace_distance,passed,error\n";
    csv.precision(17);
    for (size_t i = 0; i < points; i++) {
        double u = (double)i / (double)(points - 1);
        std::vector<double> w, analytic, simulated;
        double td = 0;
        bool ok = false;
        std::string err;
        try {
            if (cfg.kind == RunKind::kClone12) {
                double b = u;
                double a = -b / (double)d + std::sqrt(b * b / ((double)d * d) - b * b + 1);
                Protocol2Config pc{code, CloneParams12::exact(a, b, d, 1e-9), psi, cfg.ghz, cfg.fault};
                auto rep = verify_12(run_protocol2(pc), pc, cfg.ghz.tol);
                w = {a, b};
                analytic = {rep.expected_e, rep.expected_f};
                simulated = {rep.fidelity_e, rep.fidelity_f};
                td = rep.trace_distance;
                ok = rep.passed;
            } else {
                Protocol3Config pc{code, CloneParams13::from_ratio(1, u, u, d), psi, cfg.ghz, cfg.fault};
                auto rep = verify_13(run_protocol3(pc), pc, cfg.ghz.tol);
                w = {pc.params.alpha(), pc.params.beta(), pc.params.gamma()};
                analytic.assign(rep.expected.begin(), rep.expected.end());
                simulated.assign(rep.fidelities.begin(), rep.fidelities.end());
                td = rep.trace_distance;
                ok = rep.passed;
            }
        } catch (const Error &ex) {
            err = std::string(error_code_name(ex.code()));
        }
        double dev = 0;
        for (size_t k = 0; k < simulated.size(); k++) {
            dev = std::max(dev, std::abs(simulated[k] - analytic[k]));
        }
        auto cell = [](const std::vector<double> &v, size_t k) {
            std::ostringstream s;
            s.precision(17);
            if (k < v.size()) {
                s << v[k];
            }
            return s.str();
        };
        csv << kind_name(cfg.kind) << ',' << i;
        for (const auto *v : {&w, &analytic, &simulated}) {
            for (size_t k = 0; k < 3; k++) {
                csv << ',' << cell(*v, k);
            }
        }
        csv << ',' << dev << ',' << td << ',' << (ok ? "true" : "false") << ',' << err << '\n';
    }
    return csv.str();
}

json verify_report(const json &report) {
    RunConfig cfg;
    std::string expected;
    bool claimed;
    try {
        cfg = RunConfig::from_json(report.at("config"));
        cfg.code = report.at("code");
        expected = report.at("results_digest").get<std::string>();
        claimed = report.at("passed").get<bool>();
    } catch (const json::exception &ex) {
        fail(ErrorCode::kParseError, std::string("report: ") + ex.what());
    }
    RunReport replay = run(cfg);
    std::string got = replay.doc.at("results_digest").get<std::string>();
    bool match = got == expected;
    return {{"expected_digest", expected},
            {"replayed_digest", got},
            {"digest_match", match},
            {"report_passed", claimed},
            {"replay_passed", replay.passed},
            {"passed", match && replay.passed && claimed}};
}

std::string fnv1a_hex(const std::string &text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

}  // namespace qmcast
