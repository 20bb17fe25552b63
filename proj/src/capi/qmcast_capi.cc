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

#include "qmcast/qmcast.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "qmcast/classical_code.h"
#include "qmcast/error.h"
#include "qmcast/harness.h"
#include "qmcast/network.h"

struct qmc_network {
    qmcast::NetworkSpec spec;
};

struct qmc_code {
    qmcast::LinearMulticastCode code;
};

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
qmc_status guarded(F &&body) {
    g_last_error.clear();
    try {
        body();
        return QMC_OK;
    } catch (const qmcast::Error &ex) {
        g_last_error = ex.what();
        return static_cast<qmc_status>(static_cast<int>(ex.code()));
    } catch (const nlohmann::json::exception &ex) {
        g_last_error = std::string("ParseError: ") + ex.what();
        return QMC_ERR_PARSE;
    } catch (const std::exception &ex) {
        g_last_error = std::string("internal error: ") + ex.what();
        return QMC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "internal error";
        return QMC_ERR_INTERNAL;
    }
}

void need(const void *p, const char *what) {
    if (p == nullptr) {
        qmcast::fail(qmcast::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
    }
}

}  // namespace

extern "C" {

const char *qmc_version(void) {
    return "0.1.0";
}

const char *qmc_status_name(qmc_status status) {
    if (status == QMC_OK) {
        return "OK";
    }
    if (status == QMC_ERR_INTERNAL) {
        return "Internal";
    }
    int v = static_cast<int>(status);
    if (v >= 1 && v <= 23) {
        return qmcast::error_code_name(static_cast<qmcast::ErrorCode>(v)).data();
    }
    return "Unknown";
}

const char *qmc_last_error(void) {
    return g_last_error.c_str();
}

void qmc_string_free(char *s) {
    delete[] s;
}

qmc_status qmc_network_parse(const char *json, qmc_network **out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new qmc_network{qmcast::NetworkSpec::parse(json)};
    });
}

qmc_status qmc_network_load(const char *path, qmc_network **out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new qmc_network{qmcast::NetworkSpec::load(path)};
    });
}

void qmc_network_free(qmc_network *net) {
    delete net;
}

qmc_status qmc_network_target_count(const qmc_network *net, size_t *out) {
    return guarded([&] {
        need(net, "net");
        need(out, "out");
        *out = net->spec.targets().size();
    });
}

qmc_status qmc_network_min_cut(const qmc_network *net, const char *target, size_t *out) {
    return guarded([&] {
        need(net, "net");
        need(target, "target");
        need(out, "out");
        net->spec.target_index(target);
        *out = qmcast::min_cut(net->spec, target);
    });
}

qmc_status qmc_network_to_json(const qmc_network *net, char **out) {
    return guarded([&] {
        need(net, "net");
        need(out, "out");
        *out = dup_string(net->spec.to_json().dump(2));
    });
}

qmc_status qmc_code_construct(
    const qmc_network *net, uint32_t p, uint32_t t, uint32_t rate, uint64_t seed, qmc_code **out) {
    return guarded([&] {
        need(net, "net");
        need(out, "out");
        auto field = qmcast::FieldSpec::make(p, t);
        *out = new qmc_code{qmcast::LinearMulticastCode::construct(net->spec, rate, field, seed)};
    });
}

qmc_status qmc_code_from_json(const char *json, qmc_code **out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new qmc_code{qmcast::LinearMulticastCode::from_json(nlohmann::json::parse(json))};
    });
}

qmc_status qmc_code_to_json(const qmc_code *code, char **out) {
    return guarded([&] {
        need(code, "code");
        need(out, "out");
        *out = dup_string(code->code.to_json().dump(2));
    });
}

void qmc_code_free(qmc_code *code) {
    delete code;
}

qmc_status qmc_code_round_trip(const qmc_code *code, const uint64_t *message, size_t len, int *ok) {
    return guarded([&] {
        need(code, "code");
        need(message, "message");
        need(ok, "ok");
        const auto &c = code->code;
        if (len != c.rate()) {
            qmcast::fail(qmcast::ErrorCode::kDimMismatch, "message length must equal the rate");
        }
        qmcast::FieldVector x;
        for (size_t i = 0; i < len; i++) {
            if (message[i] >= c.field().q()) {
                qmcast::fail(qmcast::ErrorCode::kIndexOutOfRange, "message symbol outside the field");
            }
            x.push_back(c.field().element(message[i]));
        }
        qmcast::FieldVector y = c.encode(x);
        bool all = true;
        for (size_t i = 0; i < c.net().targets().size(); i++) {
            qmcast::FieldVector in;
            for (size_t e : c.net().in_edges(c.net().targets()[i])) {
                in.push_back(y[e]);
            }
            all = all && c.decode(i, in) == x;
        }
        *ok = all ? 1 : 0;
    });
}

qmc_status qmc_code_report(
    const qmc_network *net, uint32_t p, uint32_t t, uint32_t rate, uint64_t seed, char **report_out) {
    bool feasible = true;
    qmc_status st = guarded([&] {
        need(net, "net");
        need(report_out, "report_out");
        auto doc = qmcast::code_report(net->spec.to_json(), p, t, rate, seed);
        feasible = doc.at("feasible").get<bool>();
        *report_out = dup_string(doc.dump(2));
    });
    if (st == QMC_OK && !feasible) {
        g_last_error = "InfeasibleRate: some target has min-cut below the rate";
        return QMC_ERR_INFEASIBLE_RATE;
    }
    return st;
}

qmc_status qmc_run(const char *config_json, const char *base_dir, char **report_out, int *passed) {
    return guarded([&] {
        need(config_json, "config_json");
        need(report_out, "report_out");
        need(passed, "passed");
        auto cfg = qmcast::RunConfig::from_json(nlohmann::json::parse(config_json), base_dir ? base_dir : "");
        auto rep = qmcast::run(cfg);
        *report_out = dup_string(rep.doc.dump(2));
        *passed = rep.passed ? 1 : 0;
    });
}

qmc_status qmc_sweep(const char *config_json, const char *base_dir, size_t points, char **csv_out) {
    return guarded([&] {
        need(config_json, "config_json");
        need(csv_out, "csv_out");
        auto cfg = qmcast::RunConfig::from_json(nlohmann::json::parse(config_json), base_dir ? base_dir : "");
        *csv_out = dup_string(qmcast::sweep_csv(cfg, points));
    });
}

qmc_status qmc_verify_report(const char *report_json, char **verdict_out, int *passed) {
    return guarded([&] {
        need(report_json, "report_json");
        need(verdict_out, "verdict_out");
        need(passed, "passed");
        auto verdict = qmcast::verify_report(nlohmann::json::parse(report_json));
        *passed = verdict.at("passed").get<bool>() ? 1 : 0;
        *verdict_out = dup_string(verdict.dump(2));
    });
}

}  // extern "C"
