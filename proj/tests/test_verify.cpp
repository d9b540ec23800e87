#include <gtest/gtest.h>

#include <string>

#include "fkm/report.hpp"

namespace {

fkm::RunConfig config(int m, int k, int p, std::size_t samples, int jobs = 1) {
    fkm::RunConfig c;
    c.m = m;
    c.k = k;
    c.p = p;
    c.samples = samples;
    c.seed = 42;
    c.jobs = jobs;
    return c;
}

}  // namespace

TEST(Verify, AllSuitesPass) {
    for (int m : {1, 2, 3, 4, 8}) {
        for (int k = 2; k <= 3; ++k) {
            for (int p = 0; p < k; ++p) {
                const auto r = fkm::run_verify(config(m, k, p, 300));
                for (const auto& c : r.checks) {
                    EXPECT_TRUE(c.pass) << c.id << " m=" << m << " k=" << k << " p=" << p << " residual "
                                        << c.residual;
                }
                EXPECT_TRUE(r.ok());
            }
        }
    }
}

TEST(Verify, InjectedFaultFails) {
    auto cfg = config(4, 3, 1, 100);
    cfg.inject_fault = true;
    const auto r = fkm::run_verify(cfg);
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(r.checks.front().pass);
    EXPECT_EQ(r.checks.front().id, "clifford-exact");
}

TEST(Verify, ToleranceOverride) {
    auto cfg = config(8, 2, 1, 100);
    cfg.tolerances["gradient-fd"] = 1e-30;
    const auto r = fkm::run_verify(cfg);
    bool found = false;
    for (const auto& c : r.checks) {
        if (c.id == "gradient-fd") {
            found = true;
            EXPECT_EQ(c.tolerance, 1e-30);
            EXPECT_FALSE(c.pass);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_FALSE(r.ok());
}

TEST(Verify, JsonIsByteIdenticalAcrossRunsAndWorkers) {
    const std::string a = fkm::to_json(fkm::run_verify(config(8, 3, 1, 500, 1))).dump(2);
    const std::string b = fkm::to_json(fkm::run_verify(config(8, 3, 1, 500, 1))).dump(2);
    auto cfg4 = config(8, 3, 1, 500, 4);
    auto r4 = fkm::run_verify(cfg4);
    r4.config.jobs = 1;  // the worker count is echoed in the config block
    const std::string c = fkm::to_json(r4).dump(2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(Verify, JsonSchema) {
    const auto j = fkm::to_json(fkm::run_verify(config(4, 2, 0, 50)));
    ASSERT_TRUE(j.contains("config"));
    ASSERT_TRUE(j.contains("checks"));
    ASSERT_TRUE(j.contains("classification"));
    EXPECT_EQ(j["config"]["rng"], "mt19937_64");
    for (const auto& c : j["checks"]) {
        for (const char* key : {"id", "residual", "tolerance", "bound", "pass", "n", "seconds"}) {
            EXPECT_TRUE(c.contains(key)) << key;
        }
        EXPECT_TRUE(c["seconds"].is_null());
    }
    EXPECT_EQ(j["classification"]["cross_section"], true);
    EXPECT_EQ(j["classification"]["homotopy_class"]["value"], 0);
}

TEST(Verify, TimingsAreOptIn) {
    auto cfg = config(2, 2, 1, 20);
    cfg.timings = true;
    const auto j = fkm::to_json(fkm::run_verify(cfg));
    EXPECT_TRUE(j["checks"][0]["seconds"].is_number());
}

TEST(Verify, Classification) {
    const auto c = fkm::classify(8, 4, 1);
    EXPECT_EQ(c.l, 32u);
    EXPECT_EQ(c.m1, 8);
    EXPECT_EQ(c.m2, 23);
    EXPECT_EQ(*c.trace, *c.trace_closed_form);
    EXPECT_TRUE(c.extension->exists);
    EXPECT_TRUE(*c.cross_section);
    const auto q = fkm::classify(3, 4, 0);
    EXPECT_EQ(q.p, 3);
    EXPECT_EQ(*q.sp_order, "10080");
    EXPECT_FALSE(q.homotopy.has_value());
    EXPECT_TRUE(fkm::classify(1, 3, 2).orientation_reversing);
    const auto md = fkm::to_markdown(fkm::classify(4, 3, 2));
    EXPECT_NE(md.find("cross-section: no"), std::string::npos);
}

TEST(Verify, WitnessReport) {
    const auto r = fkm::run_witness(config(8, 2, 1, 1000), "g2-tau");
    EXPECT_TRUE(r.ok());
    const auto j = fkm::to_json(r);
    EXPECT_EQ(j["config"]["pair"], "g2-tau");
    EXPECT_GT(j["witness"]["min_random"].get<double>(), 1e-6);
    EXPECT_THROW(fkm::run_witness(config(4, 3, 0, 10), "nope"), std::invalid_argument);
}

TEST(Verify, TableShape) {
    fkm::RunConfig cfg;
    cfg.m = 4;
    const auto t = fkm::run_table(cfg, 2, 12);
    EXPECT_EQ(t.rows.size(), 66u);
    EXPECT_TRUE(t.ok());
    for (const auto& row : t.rows) {
        EXPECT_TRUE(row.consistent);
        EXPECT_EQ(row.cls.is_zero(), row.section);
        if (row.k >= 3) {
            EXPECT_EQ(row.definite_cls.value, fkm::reduce_mod(-row.k, 24));
        }
    }
    cfg.m = 8;
    const auto o = fkm::run_table(cfg, 2, 6);
    EXPECT_EQ(o.rows.front().k, 2);
    EXPECT_EQ(o.rows.front().p, 0);
    EXPECT_TRUE(o.rows.front().section);
    cfg.m = 3;
    EXPECT_THROW(fkm::run_table(cfg, 2, 4), std::invalid_argument);
}

TEST(Verify, CheckRngDependsOnSeedAndId) {
    auto a = fkm::check_rng(1, "psi1-postconditions");
    auto b = fkm::check_rng(1, "psi1-postconditions");
    auto c = fkm::check_rng(1, "psi2-postconditions");
    auto d = fkm::check_rng(2, "psi1-postconditions");
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}
