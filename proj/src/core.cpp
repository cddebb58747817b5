#include <flagekr/core.hpp>
#include <flagekr/errors.hpp>

#include <algorithm>
#include <bit>
#include <charconv>

namespace flagekr {

GroundSize::GroundSize(int n) : n_(n)
{
    if (n < 2 || n > max_ground_size)
        throw ParameterError("ground size n=" + std::to_string(n) + " outside [2," + std::to_string(max_ground_size) + "]");
}

auto GroundSize::full_mask() const -> Mask
{
    return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
}

TypeSet::TypeSet(std::vector<int> entries) : entries_(std::move(entries))
{
    if (entries_.empty())
        throw ParameterError("type set must be non-empty");
    if (entries_.front() < 1)
        throw ParameterError("type set entries must be >= 1");
    for (std::size_t k = 1; k < entries_.size(); ++k)
        if (entries_[k] <= entries_[k - 1])
            throw ParameterError("type set entries must be strictly increasing");
}

auto TypeSet::parse(std::string_view text) -> TypeSet
{
    std::vector<int> values;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '{' || text[pos] == '}'))
            ++pos;
    };
    skip();
    while (pos < text.size()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{})
            throw ParameterError("cannot parse type set '" + std::string(text) + "'");
        values.push_back(value);
        pos = static_cast<std::size_t>(ptr - text.data());
        skip();
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw ParameterError("cannot parse type set '" + std::string(text) + "'");
            ++pos;
            skip();
        }
    }
    std::sort(values.begin(), values.end());
    return TypeSet(std::move(values));
}

auto TypeSet::contains(int t) const -> bool
{
    return std::binary_search(entries_.begin(), entries_.end(), t);
}

auto TypeSet::is_subset_of(const TypeSet & other) const -> bool
{
    return std::includes(other.entries_.begin(), other.entries_.end(), entries_.begin(), entries_.end());
}

void TypeSet::check_against(GroundSize n) const
{
    if (max() >= n.value())
        throw ParameterError("type " + to_string() + " is not a subset of [" + std::to_string(n.value() - 1) + "]");
}

auto TypeSet::to_string() const -> std::string
{
    std::string s = "{";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k)
            s += ",";
        s += std::to_string(entries_[k]);
    }
    return s + "}";
}

auto dual_type(const TypeSet & type, GroundSize n) -> TypeSet
{
    type.check_against(n);
    std::vector<int> result;
    for (int t : type.entries())
        result.push_back(n.value() - t);
    std::reverse(result.begin(), result.end());
    return TypeSet(std::move(result));
}

auto type_difference(const TypeSet & type, const TypeSet & removed) -> std::vector<int>
{
    std::vector<int> result;
    for (int t : type.entries())
        if (! removed.contains(t))
            result.push_back(t);
    return result;
}

auto all_types(GroundSize n) -> std::vector<TypeSet>
{
    int m = n.value() - 1;
    if (m > 24)
        throw ResourceError("refusing to list all 2^" + std::to_string(m) + " types");
    std::vector<std::vector<int>> lists;
    for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
        std::vector<int> entries;
        for (int t = 1; t <= m; ++t)
            if (bits >> (t - 1) & 1)
                entries.push_back(t);
        lists.push_back(std::move(entries));
    }
    std::sort(lists.begin(), lists.end(), [](const auto & a, const auto & b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<TypeSet> result;
    for (auto & entries : lists)
        result.emplace_back(std::move(entries));
    return result;
}

auto FlagHash::operator()(const Flag & f) const -> std::size_t
{
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Mask m : f.levels) {
        h ^= m + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

auto count_chains(int n, std::span<const int> sizes) -> BigInt
{
    if (sizes.empty())
        return 1;
    BigInt result = binomial(n, sizes.back());
    for (std::size_t k = sizes.size() - 1; k > 0; --k)
        result *= binomial(sizes[k], sizes[k - 1]);
    return result;
}

auto count_flags(GroundSize n, const TypeSet & type) -> BigInt
{
    type.check_against(n);
    return count_chains(n.value(), type.entries());
}

namespace {
    // Scatter the low bits of `compressed` onto the set bits of `positions`.
    auto deposit(std::uint64_t compressed, Mask positions) -> Mask
    {
        Mask result = 0;
        for (Mask p = positions; compressed && p; p &= p - 1, compressed >>= 1)
            if (compressed & 1)
                result |= p & (~p + 1);
        return result;
    }

    void extend(std::vector<Flag> & out, std::vector<Mask> & prefix, std::span<const int> sizes, Mask full)
    {
        if (prefix.size() == sizes.size()) {
            out.push_back(Flag{prefix});
            return;
        }
        Mask prev = prefix.empty() ? 0 : prefix.back();
        Mask free = full & ~prev;
        int m = std::popcount(free);
        int k = sizes[prefix.size()] - std::popcount(prev);
        // Gosper's hack visits k-subsets of an m-set in increasing numeric order,
        // and deposit() preserves that order.
        using Wide = unsigned __int128;
        const Wide limit = Wide{1} << m;
        for (Wide x = (Wide{1} << k) - 1; x < limit;) {
            prefix.push_back(prev | deposit(static_cast<std::uint64_t>(x), free));
            extend(out, prefix, sizes, full);
            prefix.pop_back();
            Wide c = x & (~x + 1);
            Wide r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
}

auto enumerate_flags(GroundSize n, const TypeSet & type, std::size_t limit) -> std::vector<Flag>
{
    BigInt total = count_flags(n, type);
    if (total > limit)
        throw ResourceError("type " + type.to_string() + " on n=" + std::to_string(n.value()) + " has " + total.str()
            + " flags, above the enumeration limit " + std::to_string(limit));
    std::vector<Flag> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<Mask> prefix;
    extend(out, prefix, type.entries(), n.full_mask());
    return out;
}

auto is_valid_flag(const Flag & f, GroundSize n, const TypeSet & type) -> bool
{
    if (f.levels.size() != type.size())
        return false;
    Mask full = n.full_mask();
    for (std::size_t k = 0; k < f.levels.size(); ++k) {
        Mask m = f.levels[k];
        if ((m & ~full) || m == 0 || m == full || std::popcount(m) != type[k])
            return false;
        if (k && (f.levels[k - 1] & ~m))
            return false;
    }
    return true;
}

auto in_general_position(const Flag & f1, const Flag & f2, GroundSize n) -> bool
{
    Mask full = n.full_mask();
    for (const Flag * f : {&f1, &f2})
        for (Mask m : f->levels)
            if (m & ~full)
                throw ParameterError("flag " + format_flag(*f) + " is not over [" + std::to_string(n.value()) + "]");
    for (Mask x : f1.levels)
        for (Mask y : f2.levels)
            if (! subsets_in_general_position(x, y, full))
                return false;
    return true;
}

auto dual_flag(const Flag & f, GroundSize n) -> Flag
{
    Flag result;
    result.levels.reserve(f.levels.size());
    for (auto it = f.levels.rbegin(); it != f.levels.rend(); ++it)
        result.levels.push_back(n.full_mask() & ~*it);
    return result;
}

auto project_flag(const Flag & f, const TypeSet & from, const TypeSet & to) -> Flag
{
    if (! to.is_subset_of(from))
        throw ParameterError("cannot project type " + from.to_string() + " onto " + to.to_string() + ": not a subset");
    if (f.levels.size() != from.size())
        throw ParameterError("flag " + format_flag(f) + " does not have type " + from.to_string());
    Flag result;
    for (std::size_t k = 0; k < from.size(); ++k)
        if (to.contains(from[k]))
            result.levels.push_back(f.levels[k]);
    return result;
}

auto permute_mask(Mask m, std::span<const int> perm) -> Mask
{
    Mask result = 0;
    for (; m; m &= m - 1)
        result |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(m))];
    return result;
}

auto format_subset(Mask m) -> std::string
{
    std::string s = "{";
    bool first = true;
    for (; m; m &= m - 1) {
        if (! first)
            s += ",";
        s += std::to_string(std::countr_zero(m) + 1);
        first = false;
    }
    return s + "}";
}

auto format_flag(const Flag & f) -> std::string
{
    std::string s = "(";
    for (std::size_t k = 0; k < f.levels.size(); ++k) {
        if (k)
            s += ",";
        s += format_subset(f.levels[k]);
    }
    return s + ")";
}

}
