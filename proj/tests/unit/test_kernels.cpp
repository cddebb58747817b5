#include <flagekr/simd/kernels.hpp>

#include <doctest.h>

#include <random>
#include <string>

using namespace flagekr::simd;

namespace {

auto random_words(std::size_t count, std::mt19937_64 & rng, int density) -> std::vector<Word>
{
    std::vector<Word> out(count);
    for (auto & w : out) {
        w = rng();
        // sparse rows exercise the early-exit paths
        for (int k = 0; k < density; ++k)
            w &= rng();
    }
    return out;
}

}

TEST_CASE("scalar kernels are always available and listed first")
{
    auto all = available_kernels();
    REQUIRE(! all.empty());
    CHECK(all.front()->name == "scalar");
    CHECK(find_kernels("scalar") == &scalar_kernels());
    CHECK(find_kernels("no-such-variant") == nullptr);
    bool listed = false;
    for (const auto * k : all)
        listed = listed || k->name == kernels().name;
    CHECK(listed);
}

TEST_CASE("every variant matches the scalar reference on random rows")
{
    const auto & ref = scalar_kernels();
    std::mt19937_64 rng(7);
    for (const auto * k : available_kernels()) {
        CAPTURE(std::string(k->name));
        for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 129u}) {
            for (int density : {0, 2, 6}) {
                auto a = random_words(len, rng, density);
                auto b = random_words(len, rng, density);
                CHECK(k->popcount(a) == ref.popcount(a));
                CHECK(k->and_popcount(a, b) == ref.and_popcount(a, b));
                CHECK(k->intersects(a, b) == ref.intersects(a, b));
                CHECK(k->none(a) == ref.none(a));
                std::vector<Word> x(len), y(len);
                k->and_into(x, a, b);
                ref.and_into(y, a, b);
                CHECK(x == y);
                k->andnot_into(x, a, b);
                ref.andnot_into(y, a, b);
                CHECK(x == y);
            }
        }
        std::vector<Word> zeros(13, 0);
        CHECK(k->none(zeros));
        zeros[12] = 1;
        CHECK(! k->none(zeros));
        CHECK(k->intersects(zeros, zeros));
    }
}

TEST_CASE("in-place and_into / andnot_into agree across variants")
{
    const auto & ref = scalar_kernels();
    std::mt19937_64 rng(11);
    for (const auto * k : available_kernels()) {
        auto a = random_words(21, rng, 1);
        auto b = random_words(21, rng, 1);
        auto x = a, y = a;
        k->and_into(x, x, b);
        ref.and_into(y, y, b);
        CHECK(x == y);
        x = a, y = a;
        k->andnot_into(x, x, b);
        ref.andnot_into(y, y, b);
        CHECK(x == y);
    }
}

TEST_CASE("general_position_row matches the scalar reference")
{
    const auto & ref = scalar_kernels();
    std::mt19937_64 rng(3);
    for (const auto * k : available_kernels()) {
        CAPTURE(std::string(k->name));
        for (int n : {4, 7, 9, 16, 31}) {
            const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
            for (std::size_t depth : {1u, 2u, 3u}) {
                for (std::size_t count : {1u, 7u, 8u, 63u, 64u, 65u, 200u}) {
                    std::vector<std::uint32_t> levels(depth * count), probe(depth);
                    for (auto & m : levels)
                        m = static_cast<std::uint32_t>(rng()) & full;
                    for (auto & m : probe)
                        m = static_cast<std::uint32_t>(rng()) & full;
                    // force some rows to pass
                    for (std::size_t v = 0; v < count; v += 5)
                        for (std::size_t j = 0; j < depth; ++j)
                            levels[j * count + v] = 0;
                    std::vector<Word> x((count + 63) / 64, ~Word{0}), y((count + 63) / 64);
                    k->general_position_row(probe, levels, depth, count, full, x);
                    ref.general_position_row(probe, levels, depth, count, full, y);
                    CHECK(x == y);
                }
            }
        }
    }
}

TEST_CASE("scalar general_position_row follows its definition")
{
    // n = 4, probe {1,2}; candidates {3,4} (disjoint), {1,3} (meets, union {1,2,3}), {2,3,4} (covers)
    std::vector<std::uint32_t> probe{0b0011};
    std::vector<std::uint32_t> levels{0b1100, 0b0101, 0b1110};
    std::vector<Word> out(1);
    scalar_kernels().general_position_row(probe, levels, 1, 3, 0b1111, out);
    CHECK(out[0] == 0b101);
}
