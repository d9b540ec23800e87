#ifndef FKM_REPORT_HPP
#define FKM_REPORT_HPP

// JSON and markdown rendering of verification results.
//
// JSON layout (field names are stable):
//   {"config": {...}, "checks": [{"id", "residual", "tolerance", "bound",
//    "pass", "n", "seconds"}], "classification": {...}}
// "seconds" is null unless timings were requested, so that identical
// configurations produce byte-identical output.

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fkm/verify.hpp"

namespace fkm {

using json = nlohmann::ordered_json;

inline json to_json(const RunConfig& c) {
    json tol = json::object();
    for (const auto& [id, v] : c.tolerances) {
        tol[id] = v;
    }
    return json{{"m", c.m},           {"k", c.k},         {"p", c.p},
                {"samples", c.samples}, {"seed", c.seed},   {"rng", rng_name},
                {"jobs", c.jobs},     {"inject_fault", c.inject_fault}, {"tolerance_overrides", tol}};
}

inline json to_json(const CheckResult& r) {
    json j{{"id", r.id},
           {"residual", r.residual},
           {"tolerance", r.tolerance},
           {"bound", r.bound == Reduce::max ? "max" : "min"},
           {"pass", r.pass},
           {"n", r.n}};
    j["seconds"] = r.seconds ? json(*r.seconds) : json(nullptr);
    return j;
}

inline json to_json(const HomotopyClass& h) {
    return json{{"group", h.group},
                {"modulus", h.modulus},
                {"value", h.value},
                {"generator", h.generator},
                {"status", h.status}};
}

inline json to_json(const Classification& c) {
    json j{{"m", c.m},   {"k", c.k},   {"p", c.p},
           {"l", c.l},   {"m1", c.m1}, {"m2", c.m2},
           {"definiteness", to_string(c.definiteness)}};
    j["trace"] = c.trace ? json(*c.trace) : json(nullptr);
    j["trace_closed_form"] = c.trace_closed_form ? json(*c.trace_closed_form) : json(nullptr);
    j["homotopy_class"] = c.homotopy ? to_json(*c.homotopy) : json(nullptr);
    j["cross_section"] = c.cross_section ? json(*c.cross_section) : json(nullptr);
    j["extension"] = c.extension ? json{{"exists", c.extension->exists}, {"reason", c.extension->reason}}
                                 : json(nullptr);
    j["sp_homotopy_order"] = c.sp_order ? json(*c.sp_order) : json(nullptr);
    j["orientation_reversing"] = c.orientation_reversing;
    return j;
}

inline json checks_json(const std::vector<CheckResult>& checks) {
    json a = json::array();
    for (const auto& c : checks) {
        a.push_back(to_json(c));
    }
    return a;
}

inline json to_json(const VerifyReport& r) {
    return json{{"config", to_json(r.config)},
                {"checks", checks_json(r.checks)},
                {"classification", to_json(r.classification)}};
}

inline json to_json(const WitnessReport& r) {
    json cfg = to_json(r.config);
    cfg["pair"] = r.pair;
    return json{{"config", cfg},
                {"checks", checks_json(r.checks)},
                {"witness",
                 {{"min_random", r.result.min_random},
                  {"min_slice", r.result.min_slice},
                  {"n_random", r.result.n_random},
                  {"n_slice", r.result.n_slice}}}};
}

inline json to_json(const TableReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back(json{{"k", row.k},
                            {"p", row.p},
                            {"class", row.cls.value},
                            {"modulus", row.cls.modulus},
                            {"status", row.cls.status},
                            {"section", row.section},
                            {"extension", row.extension},
                            {"definite_class", row.definite_cls.value},
                            {"definite_section", row.definite_section},
                            {"consistent", row.consistent}});
    }
    return json{{"config", {{"m", r.m}, {"k_min", r.k_min}, {"k_max", r.k_max}}},
                {"checks", checks_json(r.checks)},
                {"rows", rows}};
}

namespace detail {

inline std::string fmt_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline void checks_markdown(std::ostringstream& os, const std::vector<CheckResult>& checks) {
    os << "| check | residual | tolerance | bound | n | result |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& c : checks) {
        os << "| " << c.id << " | " << fmt_residual(c.residual) << " | " << fmt_residual(c.tolerance) << " | "
           << (c.bound == Reduce::max ? "max" : "min") << " | " << c.n << " | " << (c.pass ? "pass" : "FAIL")
           << " |\n";
    }
}

}  // namespace detail

inline std::string to_markdown(const VerifyReport& r) {
    std::ostringstream os;
    const auto& c = r.classification;
    os << "# verify m=" << c.m << " k=" << c.k << " p=" << c.p << "\n\n";
    os << "l = " << c.l << ", (m1, m2) = (" << c.m1 << ", " << c.m2 << "), " << to_string(c.definiteness) << "\n\n";
    detail::checks_markdown(os, r.checks);
    return os.str();
}

inline std::string to_markdown(const WitnessReport& r) {
    std::ostringstream os;
    os << "# witness " << r.pair << " m=" << r.config.m << " k=" << r.config.k << " p=" << r.config.p << "\n\n";
    os << "min over random points: " << detail::fmt_residual(r.result.min_random) << " (" << r.result.n_random
       << ")\n";
    os << "min over z_1 = 0 slice: " << detail::fmt_residual(r.result.min_slice) << " (" << r.result.n_slice
       << ")\n\n";
    detail::checks_markdown(os, r.checks);
    return os.str();
}

inline std::string to_markdown(const TableReport& r) {
    std::ostringstream os;
    os << "# classification table m=" << r.m << " k=" << r.k_min << ".." << r.k_max << "\n\n";
    os << "| k | p | class | modulus | section | extension | definite class | definite section | consistent |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : r.rows) {
        os << "| " << row.k << " | " << row.p << " | " << row.cls.value << " | " << row.cls.modulus << " | "
           << (row.section ? "yes" : "no") << " | " << (row.extension ? "yes" : "no") << " | "
           << row.definite_cls.value << " | " << (row.definite_section ? "yes" : "no") << " | "
           << (row.consistent ? "yes" : "NO") << " |\n";
    }
    os << "\n";
    detail::checks_markdown(os, r.checks);
    return os.str();
}

inline std::string to_markdown(const Classification& c) {
    std::ostringstream os;
    os << "# classify m=" << c.m << " k=" << c.k << " p=" << c.p << "\n\n";
    os << "- l = " << c.l << ", (m1, m2) = (" << c.m1 << ", " << c.m2 << ")\n";
    os << "- definiteness: " << to_string(c.definiteness) << "\n";
    if (c.trace) {
        os << "- trace(P_0...P_m) = " << *c.trace << " (closed form " << *c.trace_closed_form << ")\n";
    }
    if (c.homotopy) {
        os << "- class: " << c.homotopy->value;
        if (c.homotopy->modulus) {
            os << " mod " << c.homotopy->modulus;
        }
        os << " in " << c.homotopy->group << " (" << c.homotopy->status
           << (c.homotopy->generator ? ", generator" : "") << ")\n";
    }
    if (c.cross_section) {
        os << "- cross-section: " << (*c.cross_section ? "yes" : "no") << "\n";
    }
    if (c.extension) {
        os << "- extension: " << (c.extension->exists ? "yes" : "no (" + c.extension->reason + ")") << "\n";
    }
    if (c.sp_order) {
        os << "- |pi_{4k-2} Sp(k-1)| = " << *c.sp_order << "\n";
    }
    if (c.orientation_reversing) {
        os << "- characteristic map lands in O(k-1), det = -1\n";
    }
    return os.str();
}

}  // namespace fkm

#endif
