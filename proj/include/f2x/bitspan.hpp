#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Word-level helpers for fixed-width bit rows. A "row" is a span of words
// encoding one variable set; variable i lives at word i/64, bit i%64.

namespace f2x::bits {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Always at least one word so empty variable tables still have addressable rows.
constexpr std::size_t words_for(std::size_t bit_count) {
    return bit_count == 0 ? 1 : (bit_count + kWordBits - 1) / kWordBits;
}

inline bool test(std::span<const Word> row, std::size_t bit) {
    return (row[bit / kWordBits] >> (bit % kWordBits)) & 1u;
}

inline void set(std::span<Word> row, std::size_t bit) {
    row[bit / kWordBits] |= Word{1} << (bit % kWordBits);
}

inline void reset(std::span<Word> row, std::size_t bit) {
    row[bit / kWordBits] &= ~(Word{1} << (bit % kWordBits));
}

inline bool any(std::span<const Word> row) {
    for (Word w : row)
        if (w != 0) return true;
    return false;
}

inline bool none(std::span<const Word> row) { return !any(row); }

inline std::size_t popcount(std::span<const Word> row) {
    std::size_t n = 0;
    for (Word w : row) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

inline bool equal(std::span<const Word> a, std::span<const Word> b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

// Numeric order on masks: variable 0 is the least significant bit.
inline int compare(const Word* a, const Word* b, std::size_t words) {
    for (std::size_t i = words; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

inline bool subset(std::span<const Word> a, std::span<const Word> b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return true;
    return false;
}

inline void or_assign(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

inline void and_assign(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

inline void andnot_assign(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= ~src[i];
}

inline std::optional<std::size_t> lowest_set(std::span<const Word> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] != 0)
            return i * kWordBits + static_cast<std::size_t>(std::countr_zero(row[i]));
    }
    return std::nullopt;
}

inline std::optional<std::size_t> highest_set(std::span<const Word> row) {
    for (std::size_t i = row.size(); i-- > 0;) {
        if (row[i] != 0)
            return i * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(row[i])));
    }
    return std::nullopt;
}

template <typename Fn>
void for_each_set_bit(std::span<const Word> row, Fn&& fn) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        Word w = row[i];
        while (w != 0) {
            fn(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

inline std::vector<std::uint32_t> to_indices(std::span<const Word> row) {
    std::vector<std::uint32_t> out;
    for_each_set_bit(row, [&](std::size_t b) { out.push_back(static_cast<std::uint32_t>(b)); });
    return out;
}

} // namespace f2x::bits
