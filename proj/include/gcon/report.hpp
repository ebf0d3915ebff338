#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gal.hpp"

namespace gcon {

using ojson = nlohmann::ordered_json;

enum class Status { pass, fail, numerical };

/// One reported number. A check with a two-sided acceptance band (a
/// convergence ratio) sets lo and hi; otherwise value must not exceed tolerance.
struct CheckResult {
    std::string check;
    ojson parameters = ojson::object();
    double value = 0;
    double tolerance = 0;
    bool banded = false;
    double lo = 0, hi = 0;
    Status status = Status::pass;
    std::string note;

    bool pass() const { return status == Status::pass; }
};

inline CheckResult below(std::string check, ojson params, double value, double tol) {
    CheckResult r{std::move(check), std::move(params), value, tol};
    r.status = value <= tol ? Status::pass : Status::fail;
    return r;
}

inline CheckResult within(std::string check, ojson params, double value, double lo, double hi) {
    CheckResult r{std::move(check), std::move(params), value, 0};
    r.banded = true;
    r.lo = lo;
    r.hi = hi;
    r.status = value >= lo && value <= hi ? Status::pass : Status::fail;
    return r;
}

inline CheckResult numerical_failure(std::string check, ojson params, const std::string& what) {
    CheckResult r{std::move(check), std::move(params), std::nan(""), 0};
    r.status = Status::numerical;
    r.note = what;
    return r;
}

struct Report {
    ojson config;
    std::vector<CheckResult> results;

    bool pass() const {
        for (auto& r : results)
            if (!r.pass()) return false;
        return true;
    }
    // 0 pass, 1 residual failure, 3 numerical failure
    int exit_code() const {
        int code = 0;
        for (auto& r : results) {
            if (r.status == Status::numerical) return 3;
            if (r.status == Status::fail) code = 1;
        }
        return code;
    }
};

namespace detail {
inline std::string fmt17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// nlohmann's own dump picks the shortest round-trip form; reports use a fixed
// 17 significant digits so that output is stable across runs and platforms.
inline void dump(std::ostream& os, const ojson& j, int indent, int level) {
    auto pad = [&](int l) { os << std::string(std::size_t(indent * l), ' '); };
    switch (j.type()) {
    case ojson::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            pad(level + 1);
            os << ojson(it.key()).dump() << ": ";
            dump(os, it.value(), indent, level + 1);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        pad(level);
        os << "}";
        return;
    }
    case ojson::value_t::array: {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ", ";
            dump(os, j[i], indent, level + 1);
        }
        os << "]";
        return;
    }
    case ojson::value_t::number_float:
        os << fmt17(j.get<double>());
        return;
    default:
        os << j.dump();
    }
}
}  // namespace detail

inline const char* status_name(Status s) {
    return s == Status::pass ? "pass" : s == Status::fail ? "fail" : "numerical failure";
}

inline ojson to_json(const CheckResult& r) {
    ojson j;
    j["check"] = r.check;
    j["parameters"] = r.parameters;
    j["value"] = r.value;
    if (r.banded)
        j["tolerance"] = ojson::array({r.lo, r.hi});
    else
        j["tolerance"] = r.tolerance;
    j["pass"] = r.pass();
    if (r.status == Status::numerical) j["status"] = status_name(r.status);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline void write_json(std::ostream& os, const Report& rep) {
    ojson j;
    j["schema"] = 1;
    j["config"] = rep.config;
    j["residuals"] = ojson::array();
    for (auto& r : rep.results) j["residuals"].push_back(to_json(r));
    j["pass"] = rep.pass();
    detail::dump(os, j, 2, 0);
    os << "\n";
}

/// One row per (step, n, s): b_n(s, t) and c_n(s, t) along a flow path.
template <class Real>
struct Trajectory {
    std::vector<double> time;
    std::vector<GALState<Real>> states;
};

template <class Real>
void write_csv(std::ostream& os, const Trajectory<Real>& tr) {
    os << "step,time,n,s,b,c\n";
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
        const auto& st = tr.states[i];
        for (int n = 0; n < st.N; ++n)
            for (int s = st.w.lo; s <= st.w.hi; ++s) {
                int x = s - st.w.lo;
                os << i << ',' << detail::fmt17(tr.time[i]) << ',' << n + 1 << ',' << s << ','
                   << detail::fmt17(to_double(st.b[n][x])) << ',' << detail::fmt17(to_double(st.c[n][x])) << '\n';
            }
    }
}

/// Integrate along `flows`, recording the state after every step. Time is
/// the accumulated |dt| along the path.
template <class Real>
Trajectory<Real> record(const GALState<Real>& st0, const std::vector<Flow>& flows) {
    Trajectory<Real> tr;
    tr.time.push_back(0);
    tr.states.push_back(st0);
    double t = 0;
    integrate<Real>(st0, flows, [&](const GALState<Real>& st, int idx, double) {
        t += std::abs(flows[std::size_t(idx)].dt);
        tr.time.push_back(t);
        tr.states.push_back(st);
    });
    return tr;
}

}  // namespace gcon
