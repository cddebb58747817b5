// aarch64 only. Not exercised on x86 CI hosts.

#include <flagekr/simd/kernels.hpp>

#include <arm_neon.h>

#include <bit>

namespace flagekr::simd {

namespace {
    inline auto popcount128(uint64x2_t v) -> std::size_t
    {
        return vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
    }

    auto popcount_neon(std::span<const Word> a) -> std::size_t
    {
        std::size_t i = 0, n = a.size(), total = 0;
        for (; i + 2 <= n; i += 2)
            total += popcount128(vld1q_u64(a.data() + i));
        for (; i < n; ++i)
            total += std::popcount(a[i]);
        return total;
    }

    auto and_popcount_neon(std::span<const Word> a, std::span<const Word> b) -> std::size_t
    {
        std::size_t i = 0, n = a.size(), total = 0;
        for (; i + 2 <= n; i += 2)
            total += popcount128(vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
        for (; i < n; ++i)
            total += std::popcount(a[i] & b[i]);
        return total;
    }

    void and_into_neon(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        std::size_t i = 0, n = dst.size();
        for (; i + 2 <= n; i += 2)
            vst1q_u64(dst.data() + i, vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
        for (; i < n; ++i)
            dst[i] = a[i] & b[i];
    }

    void andnot_into_neon(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
    {
        std::size_t i = 0, n = dst.size();
        for (; i + 2 <= n; i += 2)
            vst1q_u64(dst.data() + i, vbicq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
        for (; i < n; ++i)
            dst[i] = a[i] & ~b[i];
    }

    auto intersects_neon(std::span<const Word> a, std::span<const Word> b) -> bool
    {
        std::size_t i = 0, n = a.size();
        for (; i + 2 <= n; i += 2)
            if (vmaxvq_u32(vreinterpretq_u32_u64(vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)))))
                return true;
        for (; i < n; ++i)
            if (a[i] & b[i])
                return true;
        return false;
    }

    auto none_neon(std::span<const Word> a) -> bool
    {
        std::size_t i = 0, n = a.size();
        for (; i + 2 <= n; i += 2)
            if (vmaxvq_u32(vreinterpretq_u32_u64(vld1q_u64(a.data() + i))))
                return false;
        for (; i < n; ++i)
            if (a[i])
                return false;
        return true;
    }

    void general_position_row_neon(std::span<const std::uint32_t> probe, std::span<const std::uint32_t> levels,
        std::size_t depth, std::size_t count, std::uint32_t full, std::span<Word> out)
    {
        for (std::size_t w = 0; w < (count + 63) / 64; ++w)
            out[w] = 0;

        const uint32x4_t full_v = vdupq_n_u32(full);
        const uint32x4_t lane_bits = {1, 2, 4, 8};
        std::size_t v = 0;
        for (; v + 4 <= count; v += 4) {
            uint32x4_t ok = vdupq_n_u32(~0u);
            for (std::size_t j = 0; j < depth; ++j) {
                uint32x4_t q = vld1q_u32(levels.data() + j * count + v);
                for (std::uint32_t p : probe) {
                    uint32x4_t pv = vdupq_n_u32(p);
                    uint32x4_t disjoint = vceqzq_u32(vandq_u32(pv, q));
                    uint32x4_t covering = vceqq_u32(vorrq_u32(pv, q), full_v);
                    ok = vandq_u32(ok, vorrq_u32(disjoint, covering));
                }
            }
            auto bits = static_cast<Word>(vaddvq_u32(vandq_u32(ok, lane_bits)));
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

    constexpr KernelSet neon_set{
        "neon",
        popcount_neon,
        and_popcount_neon,
        and_into_neon,
        andnot_into_neon,
        intersects_neon,
        none_neon,
        general_position_row_neon,
    };
}

auto detail::neon_kernels() -> const KernelSet *
{
    return &neon_set;
}

}
