#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <vector>

namespace updown {

// Candidate and voter sets are index bitsets; identifiers exist only at the
// I/O boundary.
using Bitset = boost::dynamic_bitset<std::uint64_t>;

inline Bitset bitset_of(std::size_t universe, std::initializer_list<std::size_t> indices) {
    Bitset b(universe);
    for (auto i : indices)
        b.set(i);
    return b;
}

inline Bitset bitset_of(std::size_t universe, const std::vector<std::size_t>& indices) {
    Bitset b(universe);
    for (auto i : indices)
        b.set(i);
    return b;
}

/// Set bits in ascending order.
inline std::vector<std::size_t> indices_of(const Bitset& b) {
    std::vector<std::size_t> out;
    out.reserve(b.count());
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
        out.push_back(i);
    return out;
}

/// Bitset over a universe of size <= 64 from the low bits of a mask.
inline Bitset bitset_from_mask(std::size_t universe, std::uint64_t mask) {
    Bitset b(universe);
    for (std::size_t i = 0; i < universe; ++i)
        if (mask >> i & 1u)
            b.set(i);
    return b;
}

inline std::uint64_t mask_from_bitset(const Bitset& b) {
    std::uint64_t mask = 0;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
        mask |= std::uint64_t(1) << i;
    return mask;
}

/// True if the sorted index sequence of `a` precedes the one of `b`
/// lexicographically. Used as the second key of the committee order.
inline bool lex_before(const Bitset& a, const Bitset& b) {
    auto i = a.find_first();
    auto j = b.find_first();
    while (i != Bitset::npos && j != Bitset::npos) {
        if (i != j)
            return i < j;
        i = a.find_next(i);
        j = b.find_next(j);
    }
    return i == Bitset::npos && j != Bitset::npos;
}

} // namespace updown
