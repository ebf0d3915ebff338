#include <doctest.h>

#include <string>

#include "gcon/config.hpp"

using namespace gcon;

namespace {
std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const config_error& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("defaults") {
    auto c = parse_config("{}");
    CHECK(c.N == 1);
    CHECK(c.q == 0.5);
    CHECK(c.Q == std::vector<double>{1.0 / 3.0});
    CHECK(c.window.lo == -24);
    CHECK(c.window.hi == 24);
    CHECK(c.band_cutoff == 16);
    CHECK(c.precision == Precision::double_);
    CHECK(c.checks.size() == known_checks().size());
}

TEST_CASE("full config") {
    auto c = parse_config(R"({
        "model": {"N": 2, "q": 0.4, "Q": [0.2, 0.3, 0.4]},
        "numerics": {"window": [-16, 20], "band_cutoff": 12, "precision": "big"},
        "flows": {"t": [0.05, 0.01], "tbar": [0.02], "rk4_dt": 0.002},
        "partitions": {"max_weight": 3, "depth": 10},
        "checks": ["theorem"],
        "output": {"directory": "x", "formats": ["csv"]}
    })");
    CHECK(c.N == 2);
    CHECK(c.Q.size() == 3);
    CHECK(c.window.lo == -16);
    CHECK(c.precision == Precision::big);
    CHECK(c.t.size() == 2);
    CHECK(c.max_weight == 3);
    CHECK(c.checks == std::vector<std::string>{"theorem"});
    CHECK(c.formats == std::vector<std::string>{"csv"});
}

TEST_CASE("N without Q fills the Kahler parameters") {
    CHECK(parse_config(R"({"model": {"N": 3}})").Q.size() == 5);
}

TEST_CASE("rejections") {
    CHECK(error_of(R"({"model": {"q": 1.2}})").find("q must lie in (0, 1)") != std::string::npos);
    CHECK(error_of(R"({"model": {"N": 2, "Q": [0.3]}})").find("expected 3") != std::string::npos);
    CHECK(error_of(R"({"model": {"q": 0.5, "shape": 1}})") == "/model/shape: unknown field");
    CHECK(error_of(R"({"extra": 1})") == "/extra: unknown field");
    CHECK(error_of(R"({"numerics": {"window": [-4, 4]}})").find("16 sites") != std::string::npos);
    CHECK(error_of(R"({"numerics": {"precision": "quad"}})").find("precision") != std::string::npos);
    CHECK(error_of(R"({"numerics": {"clip_tol": 0}})").find("clip_tol") != std::string::npos);
    CHECK(error_of(R"({"checks": ["nonsense"]})").find("unknown check") != std::string::npos);
    CHECK(error_of(R"({"output": {"formats": ["xml"]}})").find("unknown format") != std::string::npos);
    CHECK(error_of(R"({"model": {"q": "half"}})").find("/model/q") != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
    auto e = error_of("{\n  \"model\": {\"q\": 0.5,}\n}");
    CHECK(e.find("line 2") != std::string::npos);
}

TEST_CASE("round trip through the report form") {
    auto c = parse_config(R"({"model": {"N": 2, "q": 0.4, "Q": [0.2, 0.3, 0.4]}})");
    auto j = to_json(c);
    auto back = parse_config(j.dump());
    CHECK(back.N == 2);
    CHECK(back.Q == c.Q);
    CHECK(to_json(back) == j);
}
