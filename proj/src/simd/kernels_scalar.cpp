#include <flagekr/simd/kernels.hpp>

#include <bit>

namespace flagekr::simd {

namespace {
    auto popcount_scalar(std::span<const Word> a) -> std::size_t
    {
        std::size_t total = 0;
        for (Word w : a)
            total += std::popcount(w);
        return total;
    }

    auto and_popcount_scalar(std::span<const Word> a, std::span<const Word> b) -> std::size_t
    {
        std::size_t total = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            total += std::popcount(a[i] & b[i]);
        return total;
    }

    void and_into_scalar(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = a[i] & b[i];
    }

    void andnot_into_scalar(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = a[i] & ~b[i];
    }

    auto intersects_scalar(std::span<const Word> a, std::span<const Word> b) -> bool
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] & b[i])
                return true;
        return false;
    }

    auto none_scalar(std::span<const Word> a) -> bool
    {
        for (Word w : a)
            if (w)
                return false;
        return true;
    }

    void general_position_row_scalar(std::span<const std::uint32_t> probe, std::span<const std::uint32_t> levels,
        std::size_t depth, std::size_t count, std::uint32_t full, std::span<Word> out)
    {
        for (std::size_t w = 0; w < (count + 63) / 64; ++w)
            out[w] = 0;
        for (std::size_t v = 0; v < count; ++v) {
            bool ok = true;
            for (std::size_t j = 0; j < depth && ok; ++j) {
                std::uint32_t q = levels[j * count + v];
                for (std::uint32_t p : probe) {
                    if ((p & q) != 0 && (p | q) != full) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok)
                out[v / 64] |= Word{1} << (v % 64);
        }
    }

    constexpr KernelSet scalar_set{
        "scalar",
        popcount_scalar,
        and_popcount_scalar,
        and_into_scalar,
        andnot_into_scalar,
        intersects_scalar,
        none_scalar,
        general_position_row_scalar,
    };
}

auto scalar_kernels() -> const KernelSet &
{
    return scalar_set;
}

}
