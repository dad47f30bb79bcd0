#include <doctest.h>

#include "qgauss/dg.hpp"
#include "qgauss/io.hpp"
#include "qgauss/verify.hpp"

#include <clocale>
#include <sstream>

using namespace qgauss;

TEST_CASE("number formatting") {
    CHECK(format_double(1.0) == "1.0000000000000000e+00");
    CHECK(format_double(-0.00125) == "-1.2500000000000000e-03");
    CHECK(std::stod(format_double(0.1)) == 0.1);
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("csv output") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CsvTable t({"k", "value"});
    t.add_row({"0", "1"});
    t.add_row({"1", "x,y"});
    t.prepend_constant("q", "0.5");
    std::ostringstream out;
    t.write(out);
    CHECK(out.str() == "q,k,value\r\n0.5,0,1\r\n0.5,1,\"x,y\"\r\n");
}

TEST_CASE("gram json lists offending entries") {
    GramReport r("t", {"0", "1"});
    r.set(0, 0, 1.0, 1.0);
    r.set(0, 1, 0.5, 0.0);
    r.set(1, 0, 0.0, 0.0);
    r.set(1, 1, 1.0, 1.0);
    CHECK(r.max_abs_deviation() == 0.5);
    const auto j = gram_to_json(r, 1e-3);
    REQUIRE(j["offending"].size() == 1);
    CHECK(j["offending"][0]["row"] == "0");
    CHECK(j["offending"][0]["col"] == "1");
    CHECK(gram_to_json(dg_gram(QSpec::from_q(0.5), 4), 1e-10)["offending"].empty());
}

TEST_CASE("verify suites") {
    CHECK(suite_names().size() == 12);
    CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
    SuiteConfig cfg;
    cfg.spec = QSpec::from_q(0.5);
    for (const auto& name : {"dg-gram", "ladders", "commutators", "poisson", "sumrule", "gamma"}) {
        const auto r = run_suite(name, cfg);
        CHECK_MESSAGE(r.passed(), name);
        const auto j = to_json(r, cfg);
        CHECK(j["schema"] == schema_version);
        CHECK(j["passed"] == true);
    }
    SuiteConfig low = cfg;
    low.nmax = 12;
    low.digits = 8;
    const auto r = run_suite("mac-gram", low);
    CHECK_FALSE(r.passed());
    CHECK(r.details.contains("cancellation_budget"));
}

TEST_CASE("commutator residuals on random chains") {
    std::mt19937_64 rng(20240611);
    for (double q : {0.2, 0.5, 0.9}) {
        const auto ctx = QContext<double>::from_q(q);
        for (int i = 0; i < 20; ++i) {
            const auto r = commutator_residuals(random_chain(rng, ctx));
            CHECK(r.arik <= 1e-13);
            CHECK(r.mac <= 1e-13);
        }
    }
}
