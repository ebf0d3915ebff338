#include <doctest.h>

#include <cmath>

#include "gcon/toda.hpp"

using namespace gcon;

TEST_CASE("LU without pivoting") {
    Window w{0, 2};
    Operator<double> M(w);
    M.m << 4, 3, 0, 6, 3, 1, 0, 2, 5;
    auto F = lu_nopivot(M);
    CHECK(F.pivots[0] == 4.0);
    CHECK(F.pivots[1] == doctest::Approx(-1.5));
    CHECK(F.pivots[2] == doctest::Approx(5 + 4.0 / 3));
    CHECK(residual(F.Lf * F.Uf, M, Range{0, 2}) < 1e-15);
    // tau is the leading principal minor
    CHECK(tau(F, w, 2) == doctest::Approx(-6));
    Operator<double> P(w);
    P.m << 0, 1, 0, 1, 0, 0, 0, 0, 1;
    CHECK_THROWS_AS(lu_nopivot(P), numerical_error);
}

TEST_CASE("pivot tolerance keeps the same headroom in every precision") {
    double d = pivot_tol_for<double>(1e-13);
    CHECK(d == doctest::Approx(1e-13));
    big b = pivot_tol_for<big>(1e-13);
    CHECK(to_double(b / std::numeric_limits<big>::epsilon()) == doctest::Approx(1e-13 / 2.220446049250313e-16));
}

TEST_CASE("Maya diagram") {
    auto m = maya(Partition{2, 1}, 0, 4);
    CHECK(m == std::vector<int>{2, 0, -2, -3});
    CHECK(maya(Partition{}, 1, 2) == std::vector<int>{1, 0});
}

TEST_CASE("vacuum matrix element of the conifold") {
    // <0|g|0> for N = 1 is prod_k (1 + Q q^k)^k
    const double q = 0.5, Q = 1.0 / 3.0;
    double want = 1;
    for (int k = 1; k < 200; ++k) want *= std::pow(1 + Q * std::pow(q, k), k);
    auto U = build_U(ModelParams<double>{1, q, {Q}}, Window{-11, 24});
    double got = matrix_element(U, Partition{}, Partition{}, 0, Q);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
    CHECK(got == doctest::Approx(1.90369288547).epsilon(1e-11));
}

TEST_CASE("dressing by zero times is the identity") {
    auto U = build_U(ModelParams<double>{1, 0.5, {0.3}}, Window{-10, 10});
    CHECK(residual(dress_U(U, TodaTimes<double>{}), U, Range{-10, 10}) == 0.0);
}

TEST_CASE("tau ratios give the diagonal of Wbar") {
    ModelParams<big> p{1, big(0.5), {big(1) / big(3)}};
    Window w{-8, 30};
    TodaTimes<big> T{{big(0.1)}, {}};
    auto M = dress_U(build_U(p, w), T);
    auto F = lu_nopivot(M);
    auto S = solve_factorization(M);
    for (int s = 6; s <= 16; ++s) {
        big r = tau(F, w, s + 1) / tau(F, w, s);
        CHECK(to_double(rabs(r / S.Wbar.at(s, s) - big(1))) < 1e-12);
    }
}

TEST_CASE("Sato and Lax equations by central differences") {
    ModelParams<big> p{1, big(0.5), {big(1) / big(3)}};
    TodaTimes<big> T0{{big(0), big(0)}, {big(0), big(0)}};
    for (auto& r : sato_lax_residuals(p, T0, 1, false, big(1e-3), Window{-8, 30}, Range{6, 16})) {
        INFO(r.name);
        CHECK(r.value < 1e-5);
        if (r.value > 1e-8) CHECK(r.ratio == doctest::Approx(4).epsilon(0.2));
    }
}

TEST_CASE("tau at a one-sided Miwa point from its Schur expansion") {
    ModelParams<big> p{1, big(0.5), {big(1) / big(3)}};
    auto r = schur_expand_check(p, std::vector<big>{big(0.1)}, std::vector<big>{}, 6, 0, Window{-10, 14});
    CHECK(r.rel < 1e-6);
}
