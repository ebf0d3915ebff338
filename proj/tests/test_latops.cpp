#include <doctest.h>

#include "gcon/latops.hpp"

using namespace gcon;

TEST_CASE("shift algebra") {
    Window w{-8, 8};
    auto L = shift<double>(1, w), Li = shift<double>(-1, w);
    CHECK(residual(L * Li, identity<double>(w), Range{-7, 7}) == 0.0);
    CHECK(residual(L * L, shift<double>(2, w), Range{-8, 8}) == 0.0);
    CHECK(L.band(1, 0) == 1.0);
    CHECK(L.band(1, 8) == 0.0);
}

TEST_CASE("quantum torus identities") {
    for (double q : {0.4, 0.5, 0.6})
        for (double Q : {0.25, 0.7})
            for (auto& r : verify_quantum_torus(q, Q, Window{-16, 16})) {
                INFO(r.name);
                CHECK(r.value < 1e-9);
            }
}

TEST_CASE("closed-form dilogarithm operators against the finite product") {
    Window w{-12, 12};
    Range in{-8, 8};
    for (int sgn : {1, -1})
        for (bool primed : {false, true}) {
            auto a = gamma_op(sgn, primed, 0.6, 0.5, w);
            auto b = gamma_op_product(sgn, primed, 0.6, 0.5, w, 1e-16);
            CHECK(residual(a, b, in, -w.size(), w.size()) < 1e-12);
            auto ai = gamma_op(sgn, primed, 0.6, 0.5, w, true);
            CHECK(residual(a * ai, identity<double>(w), in, -w.size(), w.size()) < 1e-12);
            for (int s = w.lo; s <= w.hi; ++s) CHECK(a.at(s, s) == 1.0);
        }
}

TEST_CASE("geometric series inverse") {
    Window w{-10, 10};
    auto one = identity<double>(w);
    auto a = one - 0.5 * shift<double>(-1, w);
    auto inv = invert_triangular(a, Side::lower);
    for (int k = 0; k <= 6; ++k) CHECK(inv.band(-k, 3) == doctest::Approx(std::pow(0.5, k)));
    CHECK_THROWS(invert_triangular(Operator<double>(w), Side::lower));
}

TEST_CASE("exponential of shifts") {
    Window w{-10, 10};
    std::vector<double> t{0.1, -0.05}, mt{-0.1, 0.05};
    auto E = exp_shift_series(t, 1, w), Ei = exp_shift_series(mt, 1, w);
    CHECK(residual(E * Ei, identity<double>(w), Range{-10, 10}) < 1e-15);
    auto c = exp_series_coeffs(std::vector<double>{0.1}, 5);
    CHECK(c[3] == doctest::Approx(0.001 / 6));
}

TEST_CASE("conjugation by q^(Delta^2/2)") {
    Window w{-10, 10};
    const double q = 0.5;
    for (int k : {1, -1, 2}) {
        auto lhs = conj_qdelta_sq(shift<double>(k, w), q);
        for (int s = -6; s <= 6; ++s)
            CHECK(lhs.band(k, s) == doctest::Approx(std::pow(q, -k * s - k * k / 2.0)));
        auto back = conj_qdelta_sq(lhs, q, true);
        CHECK(residual(back, shift<double>(k, w), Range{-8, 8}) < 1e-15);
    }
}

TEST_CASE("mixed residual metric") {
    Window w{0, 1};
    Operator<double> a(w), b(w);
    a.at(0, 0) = 1e6;
    b.at(0, 0) = 1e6 + 1;
    a.at(1, 1) = 1e-9;
    CHECK(residual(a, b, Range{0, 0}) == doctest::Approx(1 / (1e6 + 1)));
    CHECK(residual(a, b, Range{1, 1}) == doctest::Approx(1e-9));
}

TEST_CASE("multiprecision products skip zeros but agree with double") {
    Window w{-6, 6};
    auto a = gamma_op(-1, false, 0.5, 0.5, w) * gamma_op(1, true, 0.5, 0.5, w);
    auto ab = gamma_op(-1, false, big(0.5), big(0.5), w) * gamma_op(1, true, big(0.5), big(0.5), w);
    for (int s = -6; s <= 6; ++s)
        for (int t = -6; t <= 6; ++t) CHECK(to_double(ab.at(s, t)) == doctest::Approx(a.at(s, t)).epsilon(1e-14));
}
