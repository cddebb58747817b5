#include <flagekr/errors.hpp>
#include <flagekr/graph.hpp>
#include <flagekr/spectral.hpp>

#include <doctest.h>

#include <cmath>

using namespace flagekr;

TEST_CASE("Petersen spectrum")
{
    auto g = build_graph(GroundSize(5), TypeSet({2}));
    auto s = adjacency_spectrum(g.dense());
    REQUIRE(s.values.size() == 10);
    CHECK(s.smallest() == doctest::Approx(-2).epsilon(1e-12));
    CHECK(s.largest() == doctest::Approx(3).epsilon(1e-12));
    CHECK(s.spectral_radius == doctest::Approx(3));
    int ones = 0, minus_twos = 0;
    for (double x : s.values) {
        ones += std::abs(x - 1) < 1e-9;
        minus_twos += std::abs(x + 2) < 1e-9;
    }
    CHECK(ones == 5);
    CHECK(minus_twos == 4);
    auto in = inertia(s);
    CHECK(in.positive == 6);
    CHECK(in.negative == 4);
    CHECK(in.zero == 0);
    CHECK(s.residual < 1e-9 * s.spectral_radius);
}

TEST_CASE("complete graph and single edge")
{
    auto k4 = adjacency_spectrum(build_graph(GroundSize(4), TypeSet({1})).dense());
    CHECK(k4.smallest() == doctest::Approx(-1));
    CHECK(k4.largest() == doctest::Approx(3));
    auto edge = adjacency_spectrum(build_graph(GroundSize(2), TypeSet({1})).dense());
    CHECK(edge.values[0] == doctest::Approx(-1));
    CHECK(edge.values[1] == doctest::Approx(1));
}

TEST_CASE("zero eigenvalues are classified with a relative tolerance")
{
    // 4-cycle: 2, 0, 0, -2
    DenseGraph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    auto s = adjacency_spectrum(c4);
    auto in = inertia(s);
    CHECK(in.positive == 1);
    CHECK(in.zero == 2);
    CHECK(in.negative == 1);
}

TEST_CASE("smallest eigenvalue of Gamma(8,{2,5})")
{
    auto g = build_graph(GroundSize(8), TypeSet({2, 5}));
    auto s = adjacency_spectrum(g.dense());
    CHECK(std::abs(s.smallest() - (-1.5 * (1 + std::sqrt(17.0)))) < 1e-6);
    CHECK(s.largest() == doctest::Approx(9));
    auto in = inertia(s);
    CHECK(in.positive == in.negative);
}

TEST_CASE("guarded floor")
{
    auto plain = guarded_floor(257.4);
    CHECK(plain.value == 257);
    CHECK(! plain.other);
    auto near = guarded_floor(4.0000000001);
    CHECK(near.value == 4);
    CHECK(near.other == BigInt(3));
    auto below = guarded_floor(3.9999999999);
    CHECK(below.value == 4);
    CHECK(below.other == BigInt(3));
    auto negative = guarded_floor(-0.5);
    CHECK(negative.value == -1);
}
