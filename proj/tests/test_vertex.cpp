#include <doctest.h>

#include <cmath>

#include "gcon/vertex.hpp"

using namespace gcon;

TEST_CASE("vertex with empty legs") {
    CHECK(vertex_weight(Partition{}, Partition{}, Partition{}, 0.5) == 1.0);
    for (auto& n : enumerate_partitions(5)) {
        double s = schur(n, Specialization<double>::principal(0.5));
        CHECK(vertex_weight(Partition{}, Partition{}, n, 0.5) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("cyclic symmetry") {
    auto parts = enumerate_partitions(3);
    for (auto& a : parts)
        for (auto& b : parts)
            for (auto& g : parts) {
                double c = vertex_weight(a, b, g, 0.6);
                CHECK(vertex_weight(b, g, a, 0.6) == doctest::Approx(c).epsilon(1e-12));
            }
}

TEST_CASE("regression value") {
    CHECK(vertex_weight(Partition{2}, Partition{1, 1}, Partition{3, 1}, 0.5) ==
          doctest::Approx(75.5932098765).epsilon(1e-10));
}

TEST_CASE("both fermionic routes reproduce the vertex") {
    auto parts = enumerate_partitions(3);
    for (auto& a : parts)
        for (auto& b : parts)
            for (auto& g : parts) {
                if (a.weight() + b.weight() + g.weight() > 4) continue;
                double c = vertex_weight(a, b, g, 0.4);
                CHECK(vertex_weight_fermionic(a, b, g, 0.4, 1) == doctest::Approx(c).epsilon(1e-8));
                CHECK(vertex_weight_fermionic(a, b, g, 0.4, 2) == doctest::Approx(c).epsilon(1e-8));
            }
}

TEST_CASE("resolved conifold strip") {
    // sum_R (-Q)^|R| s_R s_R^t = prod_k (1 - Q q^k)^k
    StripSpec<double> sp;
    sp.q = 0.5;
    sp.Q = {1.0 / 3.0};
    auto Z = strip_amplitude(sp);
    double want = 1;
    for (int k = 1; k < 200; ++k) want *= std::pow(1 - sp.Q[0] * std::pow(sp.q, k), k);
    CHECK(std::abs(Z.value - want) <= Z.tail);
    CHECK(Z.tail < 1e-7);
}

TEST_CASE("internal framing factors cancel") {
    for (int N : {1, 2})
        for (auto& l : enumerate_partitions(2)) {
            StripSpec<double> sp;
            sp.N = N;
            sp.alpha0 = l;
            sp.alpha2N = Partition{1};
            sp.q = 0.4;
            sp.Q = std::vector<double>(std::size_t(2 * N - 1), 0.25);
            auto a = strip_amplitude(sp), b = strip_amplitude_fermionic(sp);
            CHECK(std::abs(a.value - b.value) / std::abs(a.value) < 1e-10);
        }
}

TEST_CASE("strip amplitude as a fermionic matrix element") {
    std::vector<std::pair<Partition, Partition>> pairs;
    for (auto& l : enumerate_partitions(1))
        for (auto& m : enumerate_partitions(1)) pairs.push_back({l, m});
    auto cc = cross_check_amplitudes<double, big>(pairs, ModelParams<double>{1, 0.5, {1.0 / 3.0}}, 8, 12);
    for (auto& c : cc) CHECK(c.rel < 1e-6);
}

TEST_CASE("framing operator is diagonal") {
    for (auto& l : enumerate_partitions(3))
        for (auto& m : enumerate_partitions(3)) {
            double want = l == m ? std::pow(0.5, 0.5 * double(kappa(l) + l.weight())) : 0.0;
            CHECK(w0_element(l, m, 0.5, true) == doctest::Approx(want).epsilon(1e-12));
        }
}
