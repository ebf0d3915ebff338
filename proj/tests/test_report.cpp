#include <doctest.h>

#include <sstream>

#include "gcon/suite.hpp"

using namespace gcon;

TEST_CASE("pass, fail and banded results") {
    CHECK(below("a", {}, 1e-10, 1e-9).pass());
    CHECK_FALSE(below("a", {}, 1e-8, 1e-9).pass());
    CHECK(within("r", {}, 4.1, 3.2, 4.8).pass());
    CHECK_FALSE(within("r", {}, 5.0, 3.2, 4.8).pass());
    auto n = numerical_failure("f", {}, "vanishing pivot");
    CHECK(n.status == Status::numerical);
}

TEST_CASE("exit codes") {
    Report r;
    CHECK(r.exit_code() == 0);
    r.results.push_back(below("a", {}, 1.0, 2.0));
    CHECK(r.exit_code() == 0);
    r.results.push_back(below("b", {}, 3.0, 2.0));
    CHECK(r.exit_code() == 1);
    r.results.push_back(numerical_failure("c", {}, "x"));
    CHECK(r.exit_code() == 3);
}

TEST_CASE("reports use 17 significant digits and are deterministic") {
    Report r;
    r.config = ojson{{"q", 0.1}};
    r.results.push_back(within("ratio", ojson{{"h", 1e-3}}, 4.0000000000000009, 3.2, 4.8));
    std::ostringstream a, b;
    write_json(a, r);
    write_json(b, r);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("0.10000000000000001") != std::string::npos);
    CHECK(a.str().find("4.0000000000000009") != std::string::npos);
    CHECK(a.str().find("\"tolerance\": [3.2000000000000002, 4.7999999999999998]") != std::string::npos);
    auto j = nlohmann::json::parse(a.str());
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == true);
}

TEST_CASE("seeded parameters are reproducible and in range") {
    auto a = seeded_uniform(7, 5, 0.2, 0.8), b = seeded_uniform(7, 5, 0.2, 0.8);
    CHECK(a == b);
    for (double x : a) {
        CHECK(x >= 0.2);
        CHECK(x <= 0.8);
    }
    CHECK(seeded_uniform(8, 5, 0.2, 0.8) != a);
}

TEST_CASE("a run over cheap checks") {
    auto c = parse_config(R"({"checks": ["quantum-torus", "bcd-initial", "gal-flow"], "numerics": {"window": [-16, 16]}})");
    auto rep = run_checks(c);
    CHECK(rep.exit_code() == 0);
    CHECK(rep.results.size() > 20);
    for (auto& r : rep.results) CHECK(r.parameters.contains("precision"));
}

TEST_CASE("clipping the dressing series is a numerical failure") {
    auto c = parse_config(R"({"checks": ["quantum-torus"], "flows": {"t": [0.5]}, "numerics": {"band_cutoff": 4}})");
    CHECK(run_checks(c).exit_code() == 3);
}
