#pragma once

#include <flagekr/simd/kernels.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace flagekr {

/// Fixed-size bit-vector over vertex indices.
class Bitset {
public:
    using Word = simd::Word;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    template <typename Range>
    static auto from_members(std::size_t bits, const Range & members) -> Bitset
    {
        Bitset result(bits);
        for (auto v : members)
            result.set(static_cast<std::size_t>(v));
        return result;
    }

    auto size() const -> std::size_t { return bits_; }
    auto word_count() const -> std::size_t { return words_.size(); }
    auto words() const -> std::span<const Word> { return words_; }
    auto words() -> std::span<Word> { return words_; }

    void set(std::size_t i) { words_[i / 64] |= Word{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(Word{1} << (i % 64)); }
    auto test(std::size_t i) const -> bool { return (words_[i / 64] >> (i % 64)) & 1; }

    void set_all()
    {
        for (auto & w : words_)
            w = ~Word{0};
        trim();
    }

    void clear()
    {
        for (auto & w : words_)
            w = 0;
    }

    auto count() const -> std::size_t { return simd::kernels().popcount(words_); }
    auto none() const -> bool { return simd::kernels().none(words_); }
    auto any() const -> bool { return ! none(); }

    auto intersects(const Bitset & other) const -> bool { return simd::kernels().intersects(words_, other.words_); }
    auto intersection_count(const Bitset & other) const -> std::size_t
    {
        return simd::kernels().and_popcount(words_, other.words_);
    }

    auto operator&=(const Bitset & other) -> Bitset &
    {
        simd::kernels().and_into(words_, words_, other.words_);
        return *this;
    }

    auto operator|=(const Bitset & other) -> Bitset &
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    /// this &= ~other
    auto subtract(const Bitset & other) -> Bitset &
    {
        simd::kernels().andnot_into(words_, words_, other.words_);
        return *this;
    }

    void flip_all()
    {
        for (auto & w : words_)
            w = ~w;
        trim();
    }

    auto first() const -> std::size_t { return next(0); }

    /// Smallest member >= from, or npos.
    auto next(std::size_t from) const -> std::size_t
    {
        if (from >= bits_)
            return npos;
        std::size_t w = from / 64;
        Word cur = words_[w] & (~Word{0} << (from % 64));
        while (true) {
            if (cur)
                return w * 64 + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size())
                return npos;
            cur = words_[w];
        }
    }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (Word cur = words_[w]; cur; cur &= cur - 1)
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(cur)));
    }

    auto members() const -> std::vector<int>
    {
        std::vector<int> result;
        for_each([&](std::size_t v) { result.push_back(static_cast<int>(v)); });
        return result;
    }

    friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

    /// Canonical order: lexicographic on the ascending member sequence.
    friend auto lex_less(const Bitset & a, const Bitset & b) -> bool
    {
        std::size_t n = std::min(a.words_.size(), b.words_.size());
        for (std::size_t w = 0; w < n; ++w) {
            Word diff = a.words_[w] ^ b.words_[w];
            if (! diff)
                continue;
            std::size_t bit = static_cast<std::size_t>(std::countr_zero(diff));
            Word above = ~Word{0} << bit;
            bool a_has = (a.words_[w] >> bit) & 1;
            // The set lacking `bit` is a proper prefix iff it has nothing at or beyond `bit`.
            const Bitset & lacking = a_has ? b : a;
            bool lacking_has_more = (lacking.words_[w] & above) != 0;
            for (std::size_t u = w + 1; ! lacking_has_more && u < lacking.words_.size(); ++u)
                lacking_has_more = lacking.words_[u] != 0;
            if (! lacking_has_more)
                return ! a_has;
            return a_has;
        }
        return false;
    }

    auto hash() const -> std::size_t
    {
        std::uint64_t h = 1469598103934665603ull ^ bits_;
        for (Word w : words_) {
            h ^= w;
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }

private:
    void trim()
    {
        if (bits_ % 64 && ! words_.empty())
            words_.back() &= (Word{1} << (bits_ % 64)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<Word> words_;
};

struct BitsetHash {
    auto operator()(const Bitset & b) const -> std::size_t { return b.hash(); }
};

}
