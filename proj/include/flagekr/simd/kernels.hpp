#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace flagekr::simd {

using Word = std::uint64_t;

/// Data-parallel inner loops shared by graph construction and the solver.
///
/// Every implementation must produce bit-identical results to the scalar
/// reference; the equivalence tests in tests/unit/test_kernels.cpp run all
/// variants available on the host against each other.
struct KernelSet {
    std::string_view name;

    auto (*popcount)(std::span<const Word> a) -> std::size_t;
    auto (*and_popcount)(std::span<const Word> a, std::span<const Word> b) -> std::size_t;
    /// dst = a & b
    void (*and_into)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
    /// dst = a & ~b
    void (*andnot_into)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
    auto (*intersects)(std::span<const Word> a, std::span<const Word> b) -> bool;
    auto (*none)(std::span<const Word> a) -> bool;

    /// General-position row test over a structure-of-arrays flag table.
    ///
    /// `levels` holds `depth` consecutive arrays of `count` subset masks each.
    /// Bit v of `out` is set iff for every probe mask p and every level mask
    /// q of flag v: (p & q) == 0 or (p | q) == full. `out` must hold
    /// ceil(count / 64) words and is overwritten.
    void (*general_position_row)(std::span<const std::uint32_t> probe, std::span<const std::uint32_t> levels,
        std::size_t depth, std::size_t count, std::uint32_t full, std::span<Word> out);
};

auto scalar_kernels() -> const KernelSet &;

/// Variants compiled into this binary *and* supported by the running CPU.
auto available_kernels() -> std::vector<const KernelSet *>;

/// Lookup by name ("scalar", "avx2", "neon"); nullptr when unavailable.
auto find_kernels(std::string_view name) -> const KernelSet *;

/// The kernel set used by the library. Chosen once: the FLAGEKR_SIMD
/// environment variable may name a variant, otherwise the widest available.
auto kernels() -> const KernelSet &;

namespace detail {
    auto avx2_kernels() -> const KernelSet *;
    auto neon_kernels() -> const KernelSet *;
}

}
