#include <doctest.h>

#include <cmath>

#include "gcon/symcore.hpp"

using namespace gcon;

namespace {
// hook-content formula: s_l(q^(1/2), q^(3/2), ...) = q^(n(l) + |l|/2) / prod (1 - q^h)
double principal_schur(const Partition& l, double q) {
    auto t = conjugate(l);
    double num = 0, den = 1;
    for (int i = 1; i <= l.length(); ++i) {
        num += (i - 1) * l[i];
        for (int j = 1; j <= l[i]; ++j) den *= 1 - std::pow(q, l[i] - j + t[j] - i + 1);
    }
    return std::pow(q, num + l.weight() / 2.0) / den;
}
}  // namespace

TEST_CASE("partition counts") {
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(partitions_of(n).size() == std::size_t(p[n]));
    CHECK(enumerate_partitions(4).size() == 1 + 1 + 2 + 3 + 5);
}

TEST_CASE("conjugation and kappa") {
    CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
    CHECK(conjugate(Partition{}) == Partition{});
    CHECK(kappa(Partition{2}) == 2);
    CHECK(kappa(Partition{1, 1}) == -2);
    CHECK(kappa(Partition{3, 1}) == 4);
    for (auto& l : enumerate_partitions(8)) {
        CHECK(conjugate(conjugate(l)) == l);
        CHECK(kappa(conjugate(l)) == -kappa(l));
        // kappa = 2 * (sum of contents)
        long c = 0;
        for (int i = 1; i <= l.length(); ++i)
            for (int j = 1; j <= l[i]; ++j) c += j - i;
        CHECK(kappa(l) == 2 * c);
    }
}

TEST_CASE("partition parsing and validation") {
    CHECK(parse_partition("(2,1)") == Partition{2, 1});
    CHECK(parse_partition("3, 3, 0") == Partition{3, 3});
    CHECK(parse_partition("") == Partition{});
    CHECK_THROWS_AS(parse_partition("1,2"), config_error);
    CHECK_THROWS_AS(parse_partition("a"), config_error);
    CHECK(contains(Partition{3, 1}, Partition{2, 1}));
    CHECK_FALSE(contains(Partition{3, 1}, Partition{1, 1, 1}));
    CHECK(subpartitions(Partition{2, 1}).size() == 5);
}

TEST_CASE("Schur functions at finite lists") {
    auto ones = Specialization<double>::finite_list({1, 1, 1});
    // dimensions of GL(3) irreps
    CHECK(schur(Partition{3}, ones) == doctest::Approx(10));
    CHECK(schur(Partition{2, 1}, ones) == doctest::Approx(8));
    CHECK(schur(Partition{2, 2}, ones) == doctest::Approx(6));
    CHECK(schur(Partition{1, 1, 1, 1}, ones) == doctest::Approx(0));
    auto xy = Specialization<double>::finite_list({0.3, 0.7});
    CHECK(schur(Partition{2}, xy) == doctest::Approx(0.09 + 0.21 + 0.49));
    CHECK(schur(Partition{1, 1}, xy) == doctest::Approx(0.21));
    // s_{(2,1)/(1)} = s_2 + s_11
    CHECK(skew_schur(Partition{2, 1}, Partition{1}, xy) == doctest::Approx(0.79 + 0.21));
}

TEST_CASE("Cauchy identity") {
    auto x = Specialization<double>::finite_list({0.3, 0.2});
    auto y = Specialization<double>::finite_list({0.25, 0.1});
    double lhs = 0;
    for (auto& l : enumerate_partitions(14)) lhs += schur(l, x) * schur(l, y);
    double rhs = 1;
    for (double a : {0.3, 0.2})
        for (double b : {0.25, 0.1}) rhs /= 1 - a * b;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("principal specialization matches the hook-content formula") {
    for (double q : {0.4, 0.6})
        for (auto& l : enumerate_partitions(6)) {
            double want = principal_schur(l, q);
            CHECK(schur(l, Specialization<double>::principal(q)) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("Miwa times generate complete symmetric functions") {
    std::vector<double> x{0.3, -0.2, 0.1};
    auto T = miwa_times(x, std::vector<double>{}, 8);
    auto h = complete_h(Specialization<double>::finite_list(x), 7);
    // exp(sum t_k z^k) = prod 1/(1 - x z)
    std::vector<double> a(8, 0.0);
    a[0] = 1;
    for (int m = 1; m < 8; ++m) {
        double s = 0;
        for (int k = 1; k <= m; ++k) s += k * T.t[std::size_t(k - 1)] * a[std::size_t(m - k)];
        a[std::size_t(m)] = s / m;
    }
    for (int m = 0; m < 8; ++m) CHECK(a[std::size_t(m)] == doctest::Approx(h[std::size_t(m)]).epsilon(1e-13));
}
