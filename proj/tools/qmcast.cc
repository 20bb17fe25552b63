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

// Command-line front end. It talks to the simulator only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmcast/qmcast.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CString {
    char *p = nullptr;
    ~CString() {
        qmc_string_free(p);
    }
};

int report_error(qmc_status st) {
    std::cerr << "qmcast: " << qmc_last_error() << "\n";
    // Bad input and infeasible requests are usage errors; anything else is a failed run.
    switch (st) {
        case QMC_ERR_PARSE:
        case QMC_ERR_IO:
        case QMC_ERR_INVALID_ARGUMENT:
        case QMC_ERR_INFEASIBLE_RATE:
        case QMC_ERR_CONSTRAINT_VIOLATED:
        case QMC_ERR_DEGENERATE_PARAMS:
        case QMC_ERR_NON_PRIME:
        case QMC_ERR_CYCLIC_GRAPH:
        case QMC_ERR_STRUCTURE_VIOLATION:
        case QMC_ERR_UNKNOWN_TARGET:
        case QMC_ERR_DIM_MISMATCH:
            return kExitUsage;
        default:
            return kExitFail;
    }
}

bool emit(const std::string &text, const std::string &out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << "\n";
        }
        return true;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "qmcast: cannot write '" << out << "'\n";
        return false;
    }
    f << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return true;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string absolute(const std::string &path) {
    return std::filesystem::absolute(path).string();
}

// Options shared by run and sweep; each one overrides the config file when given.
struct RunFlags {
    std::string config, kind, network, code, state, fault;
    uint32_t p = 2, t = 1, rate = 1;
    double a = 0, b = 0, alpha = 0, beta = 0, gamma = 0;
    uint64_t seed = 0;
    bool normalize = false;
    CLI::Option *o_p, *o_t, *o_rate, *o_a, *o_b, *o_alpha, *o_beta, *o_gamma, *o_seed;

    void attach(CLI::App *app) {
        app->add_option("--config", config, "run configuration file (JSON)");
        app->add_option("--kind", kind, "ghz | clone12 | clone13");
        app->add_option("--network", network, "network file (JSON)");
        app->add_option("--code", code, "code document to replay instead of constructing one");
        o_p = app->add_option("--p", p, "field characteristic");
        o_t = app->add_option("--t", t, "field extension degree");
        o_rate = app->add_option("--rate", rate, "source rate r");
        o_a = app->add_option("--a", a, "1->2 weight a");
        o_b = app->add_option("--b", b, "1->2 weight b");
        o_alpha = app->add_option("--alpha", alpha, "1->3 weight alpha");
        o_beta = app->add_option("--beta", beta, "1->3 weight beta");
        o_gamma = app->add_option("--gamma", gamma, "1->3 weight gamma");
        app->add_flag("--normalize", normalize, "rescale the weights onto the constraint surface");
        app->add_option("--state", state, "zero | plus | basis:K | random[:SEED] | amps:RE[:IM],...");
        o_seed = app->add_option("--seed", seed, "seed for code construction and random states");
        app->add_option("--fault", fault, "inject a protocol defect (testing aid)");
    }

    // Returns the merged configuration and the directory relative paths resolve against.
    std::pair<json, std::string> merged() const {
        json doc = json::object();
        std::string base;
        if (!config.empty()) {
            doc = json::parse(slurp(config));
            base = std::filesystem::absolute(config).parent_path().string();
        }
        if (!kind.empty()) {
            doc["kind"] = kind;
        }
        if (!network.empty()) {
            doc["network"] = absolute(network);
        }
        if (!code.empty()) {
            doc["code"] = absolute(code);
        }
        if (o_p->count() || o_t->count()) {
            json field = doc.value("field", json::object());
            if (o_p->count()) {
                field["p"] = p;
            }
            if (o_t->count()) {
                field["t"] = t;
            }
            doc["field"] = field;
        }
        if (o_rate->count()) {
            doc["rate"] = rate;
        }
        json params = doc.value("params", json::object());
        for (auto [opt, key, val] : {std::tuple{o_a, "a", a}, std::tuple{o_b, "b", b}, std::tuple{o_alpha, "alpha", alpha},
                                     std::tuple{o_beta, "beta", beta}, std::tuple{o_gamma, "gamma", gamma}}) {
            if (opt->count()) {
                params[key] = val;
            }
        }
        doc["params"] = params;
        if (normalize) {
            doc["normalize"] = true;
        }
        if (!state.empty()) {
            doc["state"] = state;
        }
        if (o_seed->count()) {
            doc["seed"] = seed;
        }
        if (!fault.empty()) {
            doc["fault"] = fault;
        }
        return {doc, base};
    }
};

std::string report_csv(const json &report) {
    json flat = report.at("results").flatten();
    std::string head = "kind,passed,seed,results_digest";
    std::ostringstream row;
    row.precision(17);
    row << report["config"]["kind"].get<std::string>() << ',' << (report["passed"].get<bool>() ? "true" : "false")
        << ',' << report["seed"] << ',' << report["results_digest"].get<std::string>();
    for (auto it = flat.begin(); it != flat.end(); ++it) {
        if (it.key().rfind("/transcript", 0) == 0 || it.key().rfind("/completion", 0) == 0 ||
            it.key().rfind("/path_ledgers", 0) == 0 || it.key() == "/passed" || !(it->is_number() || it->is_boolean())) {
            continue;
        }
        head += "," + it.key().substr(1);
        row << ',';
        if (it->is_boolean()) {
            row << (it->get<bool>() ? "true" : "false");
        } else {
            row << it->get<double>();
        }
    }
    return head + "\n" + row.str() + "\n";
}

int cmd_code(const std::string &network, uint32_t p, uint32_t t, uint32_t rate, uint64_t seed, const std::string &out) {
    qmc_network *net = nullptr;
    qmc_status st = qmc_network_load(network.c_str(), &net);
    if (st != QMC_OK) {
        return report_error(st);
    }
    std::unique_ptr<qmc_network, void (*)(qmc_network *)> guard(net, qmc_network_free);
    CString text;
    st = qmc_code_report(net, p, t, rate, seed, &text.p);
    if (text.p != nullptr) {
        json doc = json::parse(text.p);
        std::ostream &table = out.empty() || out == "-" ? std::cerr : std::cout;
        table << "target  min-cut\n";
        for (auto it = doc["min_cuts"].begin(); it != doc["min_cuts"].end(); ++it) {
            table << it.key() << "  " << it.value() << "\n";
        }
        table << "rate " << rate << ": " << (doc["feasible"].get<bool>() ? "feasible" : "infeasible") << "\n";
        if (!emit(doc.dump(2), out)) {
            return kExitUsage;
        }
    }
    return st == QMC_OK ? kExitPass : report_error(st);
}

int cmd_run(const RunFlags &flags, const std::string &out, const std::string &format) {
    auto [doc, base] = flags.merged();
    CString text;
    int passed = 0;
    qmc_status st = qmc_run(doc.dump().c_str(), base.c_str(), &text.p, &passed);
    if (st != QMC_OK) {
        return report_error(st);
    }
    json report = json::parse(text.p);
    if (!emit(format == "csv" ? report_csv(report) : report.dump(2), out)) {
        return kExitUsage;
    }
    std::cerr << "qmcast: " << (passed ? "PASS" : "FAIL") << "\n";
    return passed ? kExitPass : kExitFail;
}

int cmd_sweep(const RunFlags &flags, size_t points, const std::string &out, const std::string &format) {
    if (format != "csv") {
        std::cerr << "qmcast: sweep only writes csv\n";
        return kExitUsage;
    }
    auto [doc, base] = flags.merged();
    CString text;
    qmc_status st = qmc_sweep(doc.dump().c_str(), base.c_str(), points, &text.p);
    if (st != QMC_OK) {
        return report_error(st);
    }
    if (!emit(text.p, out)) {
        return kExitUsage;
    }
    // Any row with passed=false fails the sweep.
    std::string csv = text.p;
    return csv.find(",false,") == std::string::npos ? kExitPass : kExitFail;
}

int cmd_verify(const std::string &report_path, const std::string &out) {
    std::string text;
    try {
        text = slurp(report_path);
    } catch (const std::exception &ex) {
        std::cerr << "qmcast: " << ex.what() << "\n";
        return kExitUsage;
    }
    CString verdict;
    int passed = 0;
    qmc_status st = qmc_verify_report(text.c_str(), &verdict.p, &passed);
    if (st != QMC_OK) {
        return report_error(st);
    }
    if (!emit(verdict.p, out)) {
        return kExitUsage;
    }
    return passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulate asymmetric quantum clone multicast over coded networks."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qmc_version()));

    std::string out, format = "json";
    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--out", out, "output file (default stdout)");
        sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto *code = app.add_subcommand("code", "build a linear multicast code and print the min-cut table");
    std::string code_net;
    uint32_t code_p = 2, code_t = 1, code_rate = 1;
    uint64_t code_seed = 0;
    code->add_option("--network", code_net, "network file (JSON)")->required();
    code->add_option("--p", code_p, "field characteristic");
    code->add_option("--t", code_t, "field extension degree");
    code->add_option("--rate", code_rate, "source rate r");
    code->add_option("--seed", code_seed, "construction seed");
    code->add_option("--out", out, "output file (default stdout)");

    RunFlags run_flags;
    auto *run = app.add_subcommand("run", "run a protocol and verify it");
    run_flags.attach(run);
    add_output(run);

    RunFlags sweep_flags;
    size_t points = 21;
    auto *sweep = app.add_subcommand("sweep", "fidelity curve along the asymmetry parameter");
    sweep_flags.attach(sweep);
    sweep->add_option("--points", points, "number of grid points (>= 2)");
    sweep->add_option("--out", out, "output file (default stdout)");
    sweep->add_option("--format", format, "csv")->check(CLI::IsMember({"json", "csv"}));
    format = "json";

    std::string report_path;
    auto *verify = app.add_subcommand("verify", "replay a report and check its digest");
    verify->add_option("report", report_path, "report file written by 'run'")->required();
    verify->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*code) {
            return cmd_code(code_net, code_p, code_t, code_rate, code_seed, out);
        }
        if (*run) {
            return cmd_run(run_flags, out, format);
        }
        if (*sweep) {
            return cmd_sweep(sweep_flags, points, out, sweep->count("--format") ? format : "csv");
        }
        return cmd_verify(report_path, out);
    } catch (const std::exception &ex) {
        std::cerr << "qmcast: " << ex.what() << "\n";
        return kExitUsage;
    }
}
