#include <flagekr/simd/kernels.hpp>

#include <cstdlib>
#include <iostream>

namespace flagekr::simd {

#ifndef FLAGEKR_HAVE_AVX2
auto detail::avx2_kernels() -> const KernelSet *
{
    return nullptr;
}
#endif

#ifndef FLAGEKR_HAVE_NEON
auto detail::neon_kernels() -> const KernelSet *
{
    return nullptr;
}
#endif

namespace {
    auto cpu_has_avx2() -> bool
    {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
        return false;
#endif
    }
}

auto available_kernels() -> std::vector<const KernelSet *>
{
    std::vector<const KernelSet *> result{&scalar_kernels()};
    if (auto * k = detail::avx2_kernels(); k && cpu_has_avx2())
        result.push_back(k);
    if (auto * k = detail::neon_kernels())
        result.push_back(k);
    return result;
}

auto find_kernels(std::string_view name) -> const KernelSet *
{
    for (auto * k : available_kernels())
        if (k->name == name)
            return k;
    return nullptr;
}

auto kernels() -> const KernelSet &
{
    static const KernelSet & chosen = []() -> const KernelSet & {
        if (const char * forced = std::getenv("FLAGEKR_SIMD"); forced && *forced) {
            if (auto * k = find_kernels(forced))
                return *k;
            std::cerr << "flagekr: FLAGEKR_SIMD=" << forced << " unavailable, using default kernels\n";
        }
        return *available_kernels().back();
    }();
    return chosen;
}

}
