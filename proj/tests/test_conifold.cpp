#include <doctest.h>

#include "gcon/conifold.hpp"
#include "gcon/toda.hpp"

using namespace gcon;

TEST_CASE("model parameters") {
    ModelParams<double> p{2, 0.5, {0.2, 0.3, 0.4}};
    CHECK(p.P() == doctest::Approx(0.024));
    CHECK(p.Qcum(1) == 1.0);
    CHECK(p.Qcum(3) == doctest::Approx(0.06));
    CHECK(p.D() == doctest::Approx(0.3));
    CHECK(ModelParams<double>{1, 0.5, {0.3}}.D() == -1.0);
    CHECK_THROWS_AS((ModelParams<double>{1, 1.2, {0.3}}.validate()), config_error);
    CHECK_THROWS_AS((ModelParams<double>{2, 0.5, {0.3}}.validate()), config_error);
    CHECK_THROWS_AS((ModelParams<double>{1, 0.5, {-0.3}}.validate()), config_error);
}

TEST_CASE("initial dressing diagonals") {
    ModelParams<big> p{2, big(0.5), {big(0.4), big(0.3), big(0.6)}};
    Window w{-12, 12};
    auto d = build_dressing(p, w);
    for (int s = -12; s <= 12; ++s) {
        CHECK(d.W0.at(s, s) == big(1));
        CHECK(to_double(rabs(d.Wbar0.at(s, s) / ipow(p.P(), s) - big(1))) < 1e-40);
    }
    CHECK(to_double(residual(Operator<big>(d.W0 * d.W0inv), identity<big>(w), Range{-8, 8})) < 1e-40);
    // entries span P^-12..P^12, so the upper product cancels more digits
    CHECK(to_double(residual(Operator<big>(d.Wbar0 * d.Wbar0inv), identity<big>(w), Range{-8, 8})) < 1e-25);
}

TEST_CASE("U factorizes into the initial dressing") {
    for (int N : {1, 2}) {
        ModelParams<big> p{N, big(0.5), std::vector<big>(std::size_t(2 * N - 1), big(0.4))};
        Window w{-24, 30};
        Range rows{-6, 6};
        auto s = solve_factorization(build_U(p, w));
        auto d = build_dressing(p, w);
        CHECK(to_double(residual(s.W, d.W0, rows)) < 1e-9);
        CHECK(to_double(residual(s.Wbar, d.Wbar0, rows)) < 1e-9);
    }
}

TEST_CASE("all forms of the initial Lax operators agree") {
    ModelParams<big> p{2, big(0.6), {big(0.5), big(0.7), big(0.3)}};
    Window w{-16, 16};
    Range rows{-8, 8};
    auto lax = initial_lax_products(p, w);
    CHECK(lax.L.size() >= 6);
    for (auto& [name, op] : lax.L) {
        INFO(name);
        CHECK(to_double(residual(op, lax.L.front().second, rows)) < 1e-30);
    }
    for (auto& [name, op] : lax.Lbarinv) {
        INFO(name);
        CHECK(to_double(residual(op, lax.Lbarinv.front().second, rows)) < 1e-30);
    }
}

TEST_CASE("Orlov-Schulman operators at t = 0") {
    ModelParams<double> p{1, 0.5, {1.0 / 3.0}};
    auto o = orlov_schulman_init(p, Window{-16, 16});
    CHECK(residual(o.qM_dressing, o.qM_product, Range{-8, 8}) < 1e-9);
    CHECK(residual(o.qMbar_dressing, o.qMbar_product, Range{-8, 8}) < 1e-9);
}
