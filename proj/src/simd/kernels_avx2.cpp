// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <flagekr/simd/kernels.hpp>

#include <immintrin.h>

#include <bit>

namespace flagekr::simd {

namespace {
    // Nibble lookup popcount (Mula) over 256-bit lanes.
    inline auto popcount256(__m256i v) -> __m256i
    {
        const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
        const __m256i low_mask = _mm256_set1_epi8(0x0f);
        __m256i lo = _mm256_and_si256(v, low_mask);
        __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
        __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
        return _mm256_sad_epu8(counts, _mm256_setzero_si256());
    }

    inline auto horizontal_sum(__m256i acc) -> std::size_t
    {
        return static_cast<std::size_t>(_mm256_extract_epi64(acc, 0) + _mm256_extract_epi64(acc, 1)
            + _mm256_extract_epi64(acc, 2) + _mm256_extract_epi64(acc, 3));
    }

    inline auto load(const Word * p) -> __m256i
    {
        return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p));
    }

    inline void store(Word * p, __m256i v)
    {
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(p), v);
    }

    auto popcount_avx2(std::span<const Word> a) -> std::size_t
    {
        std::size_t i = 0, n = a.size();
        __m256i acc = _mm256_setzero_si256();
        for (; i + 4 <= n; i += 4)
            acc = _mm256_add_epi64(acc, popcount256(load(a.data() + i)));
        std::size_t total = horizontal_sum(acc);
        for (; i < n; ++i)
            total += std::popcount(a[i]);
        return total;
    }

    auto and_popcount_avx2(std::span<const Word> a, std::span<const Word> b) -> std::size_t
    {
        std::size_t i = 0, n = a.size();
        __m256i acc = _mm256_setzero_si256();
        for (; i + 4 <= n; i += 4)
            acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(load(a.data() + i), load(b.data() + i))));
        std::size_t total = horizontal_sum(acc);
        for (; i < n; ++i)
            total += std::popcount(a[i] & b[i]);
        return total;
    }

    void and_into_avx2(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        std::size_t i = 0, n = dst.size();
        for (; i + 4 <= n; i += 4)
            store(dst.data() + i, _mm256_and_si256(load(a.data() + i), load(b.data() + i)));
        for (; i < n; ++i)
            dst[i] = a[i] & b[i];
    }

    void andnot_into_avx2(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        std::size_t i = 0, n = dst.size();
        // _mm256_andnot_si256(x, y) computes ~x & y
        for (; i + 4 <= n; i += 4)
            store(dst.data() + i, _mm256_andnot_si256(load(b.data() + i), load(a.data() + i)));
        for (; i < n; ++i)
            dst[i] = a[i] & ~b[i];
    }

    auto intersects_avx2(std::span<const Word> a, std::span<const Word> b) -> bool
    {
        std::size_t i = 0, n = a.size();
        for (; i + 4 <= n; i += 4)
            if (! _mm256_testz_si256(load(a.data() + i), load(b.data() + i)))
                return true;
        for (; i < n; ++i)
            if (a[i] & b[i])
                return true;
        return false;
    }

    auto none_avx2(std::span<const Word> a) -> bool
    {
        std::size_t i = 0, n = a.size();
        for (; i + 4 <= n; i += 4) {
            __m256i v = load(a.data() + i);
            if (! _mm256_testz_si256(v, v))
                return false;
        }
        for (; i < n; ++i)
            if (a[i])
                return false;
        return true;
    }

    void general_position_row_avx2(std::span<const std::uint32_t> probe, std::span<const std::uint32_t> levels,
        std::size_t depth, std::size_t count, std::uint32_t full, std::span<Word> out)
    {
        for (std::size_t w = 0; w < (count + 63) / 64; ++w)
            out[w] = 0;

        const __m256i zero = _mm256_setzero_si256();
        const __m256i full_v = _mm256_set1_epi32(static_cast<int>(full));
        std::size_t v = 0;
        for (; v + 8 <= count; v += 8) {
            __m256i ok = _mm256_set1_epi32(-1);
            for (std::size_t j = 0; j < depth; ++j) {
                __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(levels.data() + j * count + v));
                for (std::uint32_t p : probe) {
                    __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
                    __m256i disjoint = _mm256_cmpeq_epi32(_mm256_and_si256(pv, q), zero);
                    __m256i covering = _mm256_cmpeq_epi32(_mm256_or_si256(pv, q), full_v);
                    ok = _mm256_and_si256(ok, _mm256_or_si256(disjoint, covering));
                }
            }
            auto bits = static_cast<Word>(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(ok))));
            out[v / 64] |= bits << (v % 64);
        }
        for (; v < count; ++v) {
            bool ok = true;
            for (std::size_t j = 0; j < depth && ok; ++j) {
                std::uint32_t q = levels[j * count + v];
                for (std::uint32_t p : probe)
                    if ((p & q) != 0 && (p | q) != full) {
                        ok = false;
                        break;
                    }
            }
            if (ok)
                out[v / 64] |= Word{1} << (v % 64);
        }
    }

    constexpr KernelSet avx2_set{
        "avx2",
        popcount_avx2,
        and_popcount_avx2,
        and_into_avx2,
        andnot_into_avx2,
        intersects_avx2,
        none_avx2,
        general_position_row_avx2,
    };
}

auto detail::avx2_kernels() -> const KernelSet *
{
    return &avx2_set;
}

}
