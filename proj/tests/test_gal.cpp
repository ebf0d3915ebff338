#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcon/gal.hpp"
#include "gcon/report.hpp"

using namespace gcon;

namespace {
double state_diff(const GALState<double>& a, const GALState<double>& b, Range rows) {
    double e = 0;
    for (int n = 0; n < a.N; ++n)
        for (int s = rows.lo; s <= rows.hi; ++s) {
            auto i = std::size_t(s - a.w.lo);
            e = std::max({e, std::abs(a.b[n][i] - b.b[n][i]), std::abs(a.c[n][i] - b.c[n][i])});
        }
    return e;
}
}  // namespace

TEST_CASE("conifold initial data in closed form") {
    const double q = 0.5, Q = 0.3;
    Window w{-10, 10};
    auto st = initial_BCD(ModelParams<double>{1, q, {Q}}, w);
    CHECK(st.D == -1.0);
    for (int s = -10; s <= 10; ++s) {
        auto i = std::size_t(s + 10);
        CHECK(st.b[0][i] == doctest::Approx(-std::pow(q, s)));
        CHECK(st.c[0][i] == doctest::Approx(Q * std::pow(q, s - 1)));
    }
}

TEST_CASE("Lax operators from (B, C) match the dressing") {
    ModelParams<double> p{2, 0.5, {0.4, 0.3, 0.5}};
    Window w{-16, 16};
    auto [L, Lbi] = lax_from_state(initial_BCD(p, w));
    auto d = build_dressing(p, w);
    Range rows{-8, 8};
    CHECK(residual(L, Operator<double>(d.W0 * shift<double>(1, w) * d.W0inv), rows) < 1e-9);
    CHECK(residual(Lbi, Operator<double>(d.Wbar0 * shift<double>(-1, w) * d.Wbar0inv), rows) < 1e-9);
}

TEST_CASE("generator relations, support and dual form") {
    for (int N : {1, 2}) {
        ModelParams<double> p{N, 0.6, std::vector<double>(std::size_t(2 * N - 1), 0.45)};
        Window w{-12, 12};
        Range rows{-4, 4};
        auto st = initial_BCD(p, w);
        for (int k : {1, 2}) {
            auto [a, b] = qr_relations(st, k, rows);
            CHECK(a < 1e-9);
            CHECK(b < 1e-9);
            for (bool barred : {false, true}) {
                auto r = flow_rhs(st, k, barred);
                auto rd = flow_rhs(st, k, barred, true);
                CHECK(r.support_mass < 1e-8);
                for (int n = 0; n < N; ++n)
                    for (int s = rows.lo; s <= rows.hi; ++s) {
                        auto i = std::size_t(s - w.lo);
                        CHECK(r.d.b[n][i] == doctest::Approx(rd.d.b[n][i]).epsilon(1e-9));
                        CHECK(r.d.c[n][i] == doctest::Approx(rd.d.c[n][i]).epsilon(1e-9));
                    }
            }
        }
    }
}

TEST_CASE("zero-curvature residuals converge as h^2") {
    auto st = initial_BCD(ModelParams<double>{1, 0.5, {1.0 / 3.0}}, Window{-12, 12});
    auto a = zero_curvature_residuals(st, 1, 2, 1e-3, Range{-1, 0});
    auto b = zero_curvature_residuals(st, 1, 2, 5e-4, Range{-1, 0});
    REQUIRE(a.size() == 9);
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].name);
        CHECK(a[i].value < 1e-4);
        CHECK(b[i].value < 2.5e-5);
    }
}

TEST_CASE("RK4 converges at fourth order") {
    auto st = initial_BCD(ModelParams<double>{2, 0.6, {0.5, 0.5, 0.5}}, Window{-2, 14});
    Range rows{2, 6};
    auto go = [&](double dt) { return integrate(st, {Flow{1, false, dt, int(std::lround(0.2 / dt))}}); };
    auto a = go(0.025), b = go(0.0125), c = go(0.00625);
    double ratio = state_diff(a, b, rows) / state_diff(b, c, rows);
    CHECK(ratio > 12);
    CHECK(ratio < 20);
}

TEST_CASE("t and tbar flows commute") {
    auto st = initial_BCD(ModelParams<double>{1, 0.5, {1.0 / 3.0}}, Window{-16, 16});
    auto ab = integrate(st, {Flow{1, false, 0.01, 5}, Flow{1, true, 0.01, 5}});
    auto ba = integrate(st, {Flow{1, true, 0.01, 5}, Flow{1, false, 0.01, 5}});
    CHECK(state_diff(ab, ba, Range{-4, 4}) < 1e-9);
}

TEST_CASE("path to a joint time") {
    auto f = path_to({0.1, 0.0, -0.02}, {0.05}, 0.01);
    REQUIRE(f.size() == 3);
    CHECK(f[0].k == 1);
    CHECK(f[0].steps == 10);
    CHECK(f[1].k == 3);
    CHECK(f[1].dt == doctest::Approx(-0.01));
    CHECK(f[2].barred);
}

TEST_CASE("gAL flow reproduces the Toda Lax operator") {
    auto r = theorem_check<double, big>(ModelParams<double>{1, 0.5, {1.0 / 3.0}}, {0.1}, {}, 1e-3, Window{-6, 30},
                                         Window{-8, 30}, Range{6, 16});
    CHECK(r.L < 1e-5);
    CHECK(r.Lbarinv < 1e-5);
}

TEST_CASE("trajectory recording") {
    auto st = initial_BCD(ModelParams<double>{1, 0.5, {0.3}}, Window{-8, 8});
    auto tr = record(st, {Flow{1, false, 0.01, 3}});
    CHECK(tr.states.size() == 4);
    CHECK(tr.time.back() == doctest::Approx(0.03));
    std::ostringstream os;
    write_csv(os, tr);
    const std::string csv = os.str();
    CHECK(csv.rfind("step,time,n,s,b,c\n", 0) == 0);
    // header plus one row per (step, n, s)
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 17);
}
