#include <flagekr/errors.hpp>
#include <flagekr/families.hpp>
#include <flagekr/solver.hpp>

#include "oracle/bridge.hpp"

#include <doctest.h>

using namespace flagekr;

namespace {

auto build(int n, int a, int b) -> FlagGraph
{
    return build_graph(GroundSize(n), TypeSet({a, b}));
}

auto family(const FlagGraph & g, int i, bool barred = false) -> VertexSet
{
    return build_family(FamilySpec{g.n(), g.type()[0], g.type()[1], i, barred}, g);
}

template <typename F>
void for_each_triple(int max_n, F && f)
{
    for (int n = 3; n <= max_n; ++n)
        for (int a = 1; 2 * a < n; ++a)
            for (int b = n / 2 + 1; a + b < n; ++b)
                f(n, a, b);
}

}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(check_family_parameters(7, 2, 5), ParameterError);
    CHECK_THROWS_AS(check_family_parameters(8, 4, 5), ParameterError);
    CHECK_THROWS_AS(check_family_parameters(7, 0, 4), ParameterError);
    CHECK_NOTHROW(check_family_parameters(7, 2, 4));
    CHECK_THROWS_AS((FamilySpec{7, 2, 4, 3, false}.validate()), ParameterError);
    CHECK_THROWS_AS((FamilySpec{7, 2, 4, 1, true}.validate()), ParameterError);
    CHECK_NOTHROW((FamilySpec{7, 2, 4, 2, true}.validate()));
    auto g = build(7, 2, 4);
    CHECK_THROWS_AS(build_family(FamilySpec{8, 2, 5, 1, false}, g), ParameterError);
}

TEST_CASE("family size examples")
{
    CHECK(family_size(8, 2, 5, 1) == 230);
    CHECK(family_size(6, 1, 4, 0) == 20);
    CHECK(family_size(6, 1, 4, 1) == 22);
    CHECK(family_size(6, 1, 4, 2) == 22);
    CHECK(family_size(7, 2, 4, 0) == 90);
    CHECK(f_max(36, 1, 33) == 58947);
    CHECK(f_max(7, 2, 4) == 90);
    auto b = family_breakdown(8, 2, 5, 1);
    CHECK(b.total == b.term_condition_I + b.term_condition_II);
}

TEST_CASE("built families match the formulas and a set-based membership oracle")
{
    for_each_triple(9, [](int n, int a, int b) {
        auto g = build(n, a, b);
        for (int i = 0; i <= 2 * b - n + 1; ++i)
            for (bool barred : {false, true}) {
                if (barred && i != 2 * b - n + 1)
                    continue;
                CAPTURE(n);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(i);
                CAPTURE(barred);
                auto set = family(g, i, barred);
                std::size_t expected = 0;
                for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                    auto c = oracle::to_chain(g.flag(v));
                    bool member = oracle::in_family(n, i, barred, c[0], c[1]);
                    expected += member;
                    CHECK(set.contains(v) == member);
                }
                CHECK(set.size() == expected);
                CHECK(is_independent(set, g));
                if (barred)
                    CHECK(BigInt(set.size()) == barred_family_size(n, a, b));
                else {
                    CHECK(BigInt(set.size()) == family_size(n, a, b, i));
                    CHECK(family_size_alternative(n, a, b, i) == family_size(n, a, b, i));
                }
            }
    });
}

TEST_CASE("maximality below the top shift; the barred family is the unique maximal superset at the top")
{
    for_each_triple(8, [](int n, int a, int b) {
        auto g = build(n, a, b);
        const int top = 2 * b - n + 1;
        for (int i = 0; i < top; ++i)
            CHECK(is_maximal_independent(family(g, i), g));
        auto plain = family(g, top);
        auto bar = family(g, top, true);
        CHECK(! is_maximal_independent(plain, g));
        CHECK(is_maximal_independent(bar, g));
        Bitset missing = bar.members;
        missing.subtract(plain.members);
        CHECK(plain.members.intersection_count(bar.members) == plain.size());
        CHECK(BigInt(missing.count()) == barred_difference(n, a, b));
        // every vertex addable to the plain family lies in the barred one
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            if (! plain.contains(v)) {
                bool addable = ! simd::kernels().intersects(g.dense().row(v), plain.members.words());
                if (addable)
                    CHECK(bar.contains(v));
            }
    });
}

TEST_CASE("barred example at (7,2,4)")
{
    auto g = build(7, 2, 4);
    auto plain = family(g, 2);
    auto bar = family(g, 2, true);
    CHECK(bar.size() == 90);
    CHECK(bar.size() == plain.size() + 4);
    CHECK(barred_difference(7, 2, 4) == 4);
}

TEST_CASE("optimal shift examples")
{
    auto s = optimal_shift(6, 1, 4);
    CHECK(s.i0 == 1);
    CHECK(s.i_star == 1);
    CHECK(s.two_maxima);
    auto t = optimal_shift(7, 2, 4);
    CHECK(t.i0 == 0);
    CHECK(t.i_star == 0);
    CHECK(t.two_maxima);
    CHECK(family_size(7, 2, 4, 0) == family_size(7, 2, 4, 1));
    auto u = optimal_shift(8, 2, 5);
    CHECK(u.i0 == 1);
    CHECK(family_size(8, 2, 5, 2) == 230);
    auto v = optimal_shift(8, 1, 5);
    CHECK(v.i0 == -2);
    CHECK(v.i_star == 0);
    CHECK(! v.two_maxima);
}

TEST_CASE("family size increases exactly up to i0")
{
    for_each_triple(30, [](int n, int a, int b) {
        auto s = optimal_shift(n, a, b);
        for (int i = 0; i + 1 <= 2 * b - n + 1; ++i) {
            BigInt here = family_size(n, a, b, i), next = family_size(n, a, b, i + 1);
            CHECK((next >= here) == (Rational(i) <= s.i0));
            CHECK((next == here) == (Rational(i) == s.i0));
        }
        BigInt best = 0;
        for (int i = 0; i <= 2 * b - n + 1; ++i)
            best = std::max(best, family_size(n, a, b, i));
        CHECK(best == f_max(n, a, b));
        CHECK(f_max(n, a, b) == family_size(n, a, b, s.i_star));
        if (a + 3 * b <= 2 * n)
            CHECK(f_max(n, a, b) == binomial(n - 1, b) * binomial(b, a));
    });
}

TEST_CASE("three equal maxima when a + b = n - 1")
{
    for (int n = 5; n <= 30; ++n)
        for (int a = 1; 2 * a < n; ++a) {
            int b = n - 1 - a;
            if (2 * b <= n)
                continue;
            auto s = optimal_shift(n, a, b);
            REQUIRE(s.i0 == 2 * b - n - 1);
            BigInt expected = binomial(n, 2 * a + 1) * binomial(2 * a, a - 1) + binomial(2 * a, a);
            CHECK(family_size(n, a, b, s.i_star) == expected);
            CHECK(family_size(n, a, b, s.i_star + 1) == expected);
            CHECK(barred_family_size(n, a, b) == expected);
        }
}

TEST_CASE("recurrence examples")
{
    auto r = recurrence_values(8, 2, 5);
    CHECK(r.f_n == 230);
    CHECK(r.f_smaller == 90);
    CHECK(r.first_holds());
    CHECK(r.second_lhs == 30);
    CHECK(r.second_holds());
    CHECK(recurrence_term(8, 2, 5) == 30);
    auto s = recurrence_values(6, 1, 4);
    CHECK(s.f_n == 22);
    CHECK(s.f_smaller == 12);
    CHECK(s.first_holds());
    CHECK(recurrence_check(8, 2, 5));
}

TEST_CASE("recurrences hold whenever the optimal shift is positive and fail at shift zero")
{
    int applicable = 0, excluded = 0;
    for_each_triple(40, [&](int n, int a, int b) {
        try {
            check_family_parameters(n - 1, a, b - 1);
        }
        catch (const ParameterError &) {
            CHECK(! recurrence_applicable(n, a, b));
            return;
        }
        if (recurrence_applicable(n, a, b)) {
            ++applicable;
            auto r = recurrence_values(n, a, b);
            CHECK(r.first_holds());
            CHECK(r.second_holds());
            CHECK(recurrence_check(n, a, b));
        }
        else {
            ++excluded;
            CHECK(optimal_shift(n, a, b).i_star == 0);
            CHECK_THROWS_AS(recurrence_check(n, a, b), ParameterError);
        }
    });
    CHECK(applicable > 500);
    auto bad = recurrence_values(8, 1, 5);
    CHECK(bad.f_n == 105);
    CHECK(bad.first_rhs == 95);
    CHECK(! bad.first_holds());
}

TEST_CASE("neighbour profiles")
{
    auto g = build(6, 1, 4);
    auto p1 = neighbor_profile(family(g, 1), g);
    auto p2 = neighbor_profile(family(g, 2), g);
    REQUIRE(! p1.empty());
    REQUIRE(! p2.empty());
    CHECK(p1.begin()->first == p2.begin()->first);
    CHECK(p1.begin()->second == 12);
    CHECK(p2.begin()->second == 9);
    auto empty = neighbor_profile(empty_set(g), g);
    REQUIRE(empty.size() == 1);
    CHECK(empty.at(0) == g.vertex_count());
    std::vector<int> edge{0, g.neighbours(0)[0]};
    CHECK_THROWS_AS(neighbor_profile(make_vertex_set(g, edge), g), ParameterError);
    std::size_t total = 0;
    for (auto [k, c] : p1)
        total += c;
    CHECK(total == g.vertex_count() - 22);
}
