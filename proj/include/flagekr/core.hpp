#pragma once

#include <flagekr/integer.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagekr {

/// Subset of [n]: element i is bit i-1.
using Mask = std::uint64_t;

inline constexpr int max_ground_size = 64;

/// Size n of the ground set [n].
class GroundSize {
public:
    explicit GroundSize(int n);

    auto value() const -> int { return n_; }
    auto full_mask() const -> Mask;

    friend auto operator<=>(const GroundSize &, const GroundSize &) = default;

private:
    int n_;
};

/// Strictly increasing list of level sizes, all >= 1.
class TypeSet {
public:
    explicit TypeSet(std::vector<int> entries);

    /// Parses "2,5" (a comma list, optional braces and spaces).
    static auto parse(std::string_view text) -> TypeSet;

    auto entries() const -> std::span<const int> { return entries_; }
    auto size() const -> std::size_t { return entries_.size(); }
    auto min() const -> int { return entries_.front(); }
    auto max() const -> int { return entries_.back(); }
    auto operator[](std::size_t k) const -> int { return entries_[k]; }
    auto contains(int t) const -> bool;
    auto is_subset_of(const TypeSet & other) const -> bool;

    /// Throws ParameterError unless max() < n.
    void check_against(GroundSize n) const;

    auto to_string() const -> std::string;

    friend auto operator==(const TypeSet &, const TypeSet &) -> bool = default;
    friend auto operator<=>(const TypeSet &, const TypeSet &) = default;

private:
    std::vector<int> entries_;
};

/// omega_n(T) = { n - t : t in T }.
auto dual_type(const TypeSet & type, GroundSize n) -> TypeSet;

/// Entries of `type` that are not in `removed` (possibly empty).
auto type_difference(const TypeSet & type, const TypeSet & removed) -> std::vector<int>;

/// Every non-empty subset of [n-1], ordered by size then lexicographically.
auto all_types(GroundSize n) -> std::vector<TypeSet>;

/// A chain of subsets, one bitmask per level, smallest level first.
struct Flag {
    std::vector<Mask> levels;

    friend auto operator==(const Flag &, const Flag &) -> bool = default;
    friend auto operator<=>(const Flag &, const Flag &) = default;
};

struct FlagHash {
    auto operator()(const Flag & f) const -> std::size_t;
};

/// Number of chains X_1 < ... < X_k in [n] with |X_j| = sizes[j]; 1 for an
/// empty size list. Works for any n >= 0.
auto count_chains(int n, std::span<const int> sizes) -> BigInt;

/// |V Gamma(n, T)|.
auto count_flags(GroundSize n, const TypeSet & type) -> BigInt;

/// All flags of type T, lexicographic on the level masks (smallest level first).
/// Throws ResourceError above `limit` flags.
auto enumerate_flags(GroundSize n, const TypeSet & type, std::size_t limit = 50'000'000) -> std::vector<Flag>;

auto is_valid_flag(const Flag & f, GroundSize n, const TypeSet & type) -> bool;

inline auto subsets_in_general_position(Mask x, Mask y, Mask full) -> bool
{
    return (x & y) == 0 || (x | y) == full;
}

/// Every level of f1 against every level of f2. Types may differ.
auto in_general_position(const Flag & f1, const Flag & f2, GroundSize n) -> bool;

/// Complement of every level; the result has type omega_n(T).
auto dual_flag(const Flag & f, GroundSize n) -> Flag;

/// Keeps the levels whose sizes lie in `to`; `to` must be a subset of `from`.
auto project_flag(const Flag & f, const TypeSet & from, const TypeSet & to) -> Flag;

/// Relabels ground elements: element e (0-based) goes to perm[e].
auto permute_mask(Mask m, std::span<const int> perm) -> Mask;

auto format_subset(Mask m) -> std::string;
/// "({1},{1,2,3})"
auto format_flag(const Flag & f) -> std::string;

}
