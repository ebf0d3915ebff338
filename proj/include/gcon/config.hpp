#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conifold.hpp"

namespace gcon {

enum class Precision { double_, big };

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{
        "quantum-torus", "factorize-initial", "lax-initial", "bcd-initial",       "orlov-schulman",  "toda-flow",
        "gal-flow",      "zero-curvature",    "theorem",     "vertex-cross-check", "schur-expansion"};
    return names;
}

struct RunConfig {
    // model
    int N = 1;
    double q = 0.5;
    std::vector<double> Q{1.0 / 3.0};
    // numerics
    Window window{-24, 24};
    int band_cutoff = 16;
    double qprod_eps = 1e-14;
    double pivot_tol = 1e-13;
    double support_tol = 1e-8;
    double clip_tol = 1e-12;
    Precision precision = Precision::double_;
    // flows
    std::vector<double> t{0.1}, tbar;
    double rk4_dt = 1e-3;
    // partitions
    int max_weight = 2;
    int depth = 12;
    std::vector<std::string> checks = known_checks();
    // output
    std::string directory = "out";
    std::vector<std::string> formats{"json"};

    ModelParams<double> model() const { return {N, q, Q}; }

    void validate() const {
        model().validate();
        if (window.lo >= window.hi) throw config_error("numerics.window: need min < max");
        if (window.size() < 16) throw config_error("numerics.window: at least 16 sites are needed");
        if (band_cutoff < 0) throw config_error("numerics.band_cutoff must be non-negative");
        for (auto [name, v] : {std::pair{"qprod_eps", qprod_eps}, {"pivot_tol", pivot_tol},
                               {"support_tol", support_tol}, {"clip_tol", clip_tol}, {"rk4_dt", rk4_dt}})
            if (!(v > 0)) throw config_error(std::string(name) + " must be positive");
        if (max_weight < 0) throw config_error("partitions.max_weight must be non-negative");
        if (depth < 2) throw config_error("partitions.depth must be at least 2");
        std::set<std::string> known(known_checks().begin(), known_checks().end());
        for (auto& c : checks)
            if (!known.count(c)) throw config_error("checks: unknown check '" + c + "'");
        for (auto& f : formats)
            if (f != "json" && f != "csv") throw config_error("output.formats: unknown format '" + f + "'");
    }
};

namespace detail {
using json = nlohmann::json;

inline void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw config_error(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok = ok || it.key() == a;
        if (!ok) throw config_error(where + "/" + it.key() + ": unknown field");
    }
}

template <class T>
T get(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw config_error(where + ": " + e.what());
    }
}
}  // namespace detail

/// Every section and field is optional; anything not listed is an error.
inline RunConfig parse_config(const std::string& text) {
    using detail::get;
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw config_error("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                           e.what());
    }
    RunConfig c;
    detail::reject_unknown(j, "", {"model", "numerics", "flows", "partitions", "checks", "output"});
    if (j.contains("model")) {
        auto& m = j["model"];
        detail::reject_unknown(m, "/model", {"N", "q", "Q"});
        if (m.contains("N")) c.N = get<int>(m["N"], "/model/N");
        if (m.contains("q")) c.q = get<double>(m["q"], "/model/q");
        if (m.contains("Q")) c.Q = get<std::vector<double>>(m["Q"], "/model/Q");
        else if (m.contains("N")) c.Q.assign(2 * c.N - 1, 1.0 / 3.0);
    }
    if (j.contains("numerics")) {
        auto& n = j["numerics"];
        detail::reject_unknown(n, "/numerics", {"window", "band_cutoff", "qprod_eps", "pivot_tol", "support_tol",
                                                "clip_tol", "precision"});
        if (n.contains("window")) {
            auto w = get<std::vector<int>>(n["window"], "/numerics/window");
            if (w.size() != 2) throw config_error("/numerics/window: expected [min, max]");
            c.window = {w[0], w[1]};
        }
        if (n.contains("band_cutoff")) c.band_cutoff = get<int>(n["band_cutoff"], "/numerics/band_cutoff");
        if (n.contains("qprod_eps")) c.qprod_eps = get<double>(n["qprod_eps"], "/numerics/qprod_eps");
        if (n.contains("pivot_tol")) c.pivot_tol = get<double>(n["pivot_tol"], "/numerics/pivot_tol");
        if (n.contains("support_tol")) c.support_tol = get<double>(n["support_tol"], "/numerics/support_tol");
        if (n.contains("clip_tol")) c.clip_tol = get<double>(n["clip_tol"], "/numerics/clip_tol");
        if (n.contains("precision")) {
            auto p = get<std::string>(n["precision"], "/numerics/precision");
            if (p == "double") c.precision = Precision::double_;
            else if (p == "big") c.precision = Precision::big;
            else throw config_error("/numerics/precision: expected \"double\" or \"big\", got \"" + p + "\"");
        }
    }
    if (j.contains("flows")) {
        auto& f = j["flows"];
        detail::reject_unknown(f, "/flows", {"t", "tbar", "rk4_dt"});
        if (f.contains("t")) c.t = get<std::vector<double>>(f["t"], "/flows/t");
        if (f.contains("tbar")) c.tbar = get<std::vector<double>>(f["tbar"], "/flows/tbar");
        if (f.contains("rk4_dt")) c.rk4_dt = get<double>(f["rk4_dt"], "/flows/rk4_dt");
    }
    if (j.contains("partitions")) {
        auto& p = j["partitions"];
        detail::reject_unknown(p, "/partitions", {"max_weight", "depth"});
        if (p.contains("max_weight")) c.max_weight = get<int>(p["max_weight"], "/partitions/max_weight");
        if (p.contains("depth")) c.depth = get<int>(p["depth"], "/partitions/depth");
    }
    if (j.contains("checks")) c.checks = get<std::vector<std::string>>(j["checks"], "/checks");
    if (j.contains("output")) {
        auto& o = j["output"];
        detail::reject_unknown(o, "/output", {"directory", "formats"});
        if (o.contains("directory")) c.directory = get<std::string>(o["directory"], "/output/directory");
        if (o.contains("formats")) c.formats = get<std::vector<std::string>>(o["formats"], "/output/formats");
    }
    c.validate();
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

/// The config as it was understood, for the report.
inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["model"] = {{"N", c.N}, {"q", c.q}, {"Q", c.Q}};
    j["numerics"] = {{"window", {c.window.lo, c.window.hi}},
                     {"band_cutoff", c.band_cutoff},
                     {"qprod_eps", c.qprod_eps},
                     {"pivot_tol", c.pivot_tol},
                     {"support_tol", c.support_tol},
                     {"clip_tol", c.clip_tol},
                     {"precision", c.precision == Precision::big ? "big" : "double"}};
    j["flows"] = {{"t", c.t}, {"tbar", c.tbar}, {"rk4_dt", c.rk4_dt}};
    j["partitions"] = {{"max_weight", c.max_weight}, {"depth", c.depth}};
    j["checks"] = c.checks;
    j["output"] = {{"directory", c.directory}, {"formats", c.formats}};
    return j;
}

}  // namespace gcon
