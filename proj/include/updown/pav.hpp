#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "updown/outcome.hpp"
#include "updown/rational.hpp"

namespace updown {

/// H(0..limit) as exact rationals.
inline std::vector<Rational> harmonic_table(std::size_t limit) {
    std::vector<Rational> h(limit + 1, Rational(0));
    for (std::size_t x = 1; x <= limit; ++x)
        h[x] = h[x - 1] + Rational(1, BigInt(x));
    return h;
}

/// PAV score of a positive selection: sum over voters of
/// H(|A_i ∩ selected| + |D_i \ selected|), i.e. the score of the maximal
/// completion of `selected`.
inline Rational pav_score(const Election& e, const Bitset& selected) {
    if (selected.count() > static_cast<std::size_t>(e.k))
        throw ValidationError("TooLarge: selection exceeds committee bound k");
    auto h = harmonic_table(e.num_candidates());
    Rational score(0);
    for (const auto& b : e.ballots)
        score += h[(b.approve & selected).count() + (b.disapprove & ~selected).count()];
    return score;
}

namespace detail {

// Harmonic numerators over lcm(1..limit); fits int64 for limit <= 20, which
// is where the exhaustive guards live.
struct HarmonicInt {
    std::int64_t lcm = 1;
    std::vector<std::int64_t> num;

    explicit HarmonicInt(std::size_t limit) {
        auto gcd = [](std::int64_t a, std::int64_t b) {
            while (b) {
                a %= b;
                std::swap(a, b);
            }
            return a;
        };
        for (std::size_t x = 1; x <= limit; ++x)
            lcm = lcm / gcd(lcm, static_cast<std::int64_t>(x)) * static_cast<std::int64_t>(x);
        num.assign(limit + 1, 0);
        for (std::size_t x = 1; x <= limit; ++x)
            num[x] = num[x - 1] + lcm / static_cast<std::int64_t>(x);
    }
};

/// First-difference order on equal-size masks: the set holding the lowest
/// differing index precedes lexicographically.
inline bool mask_lex_before(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0)
        return false;
    return a >> std::countr_zero(diff) & 1u;
}

inline bool mask_committee_prefer(std::uint64_t a, std::uint64_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb)
        return ca > cb;
    return mask_lex_before(a, b);
}

} // namespace detail

/// Exhaustive PAV over the extended space, collapsed to positive selections:
/// every selected ⊆ C with |selected| ≤ k is scored through its maximal
/// completion (the score is not monotone in the committee size, so smaller
/// selections compete too). Ties fall to the global committee order.
inline ExtendedOutcome pav_exact(const Election& e, std::size_t guard = 20) {
    const std::size_t m = e.num_candidates();
    if (m > guard || m > 64)
        throw GuardExceeded("GuardExceeded: pav_exact needs m <= " + std::to_string(guard) +
                            ", got " + std::to_string(m));
    const std::size_t n = e.num_voters();
    std::vector<std::uint64_t> approve(n), disapprove(n);
    for (std::size_t i = 0; i < n; ++i) {
        approve[i] = mask_from_bitset(e.ballots[i].approve);
        disapprove[i] = mask_from_bitset(e.ballots[i].disapprove);
    }
    const detail::HarmonicInt h(m);
    const std::uint64_t all = m == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m) - 1;
    const int k = e.k;

    std::int64_t best_score = -1;
    std::uint64_t best_mask = 0;
    for (std::uint64_t sel = 0;; ++sel) {
        if (std::popcount(sel) <= k) {
            std::int64_t score = 0;
            for (std::size_t i = 0; i < n; ++i)
                score += h.num[static_cast<std::size_t>(
                    std::popcount(approve[i] & sel) + std::popcount(disapprove[i] & ~sel & all))];
            if (score > best_score ||
                (score == best_score && detail::mask_committee_prefer(sel, best_mask))) {
                best_score = score;
                best_mask = sel;
            }
        }
        if (sel == all)
            break;
    }
    ExtendedOutcome out = ExtendedOutcome::empty(e);
    out.selected = bitset_from_mask(m, best_mask);
    return maximal_completion(out, e);
}

/// Hill-climbing PAV: from `start`, repeatedly applies the best improving
/// move among {add one, remove one, swap one in and one out}, which under
/// maximal completion realizes the one-to-many exchanges of the extended
/// space. Deterministic: best move, ties by the committee order. Returns the
/// maximal completion of the local optimum.
inline ExtendedOutcome pav_local_search(const Election& e, const Bitset& start) {
    const std::size_t m = e.num_candidates();
    if (start.size() != m)
        throw ValidationError("TooLarge: start selection has the wrong universe size");
    if (start.count() > static_cast<std::size_t>(e.k))
        throw ValidationError("TooLarge: start selection exceeds committee bound k");
    auto h = harmonic_table(m);
    auto score_of = [&](const Bitset& sel) {
        Rational score(0);
        for (const auto& b : e.ballots)
            score += h[(b.approve & sel).count() + (b.disapprove & ~sel).count()];
        return score;
    };

    Bitset current = start;
    Rational current_score = score_of(current);
    for (;;) {
        Bitset best_move;
        Rational best_score = current_score;
        bool improved = false;
        auto propose = [&](const Bitset& sel) {
            Rational sc = score_of(sel);
            if (sc > best_score ||
                (improved && sc == best_score && committee_prefer(sel, best_move))) {
                best_score = sc;
                best_move = sel;
                improved = true;
            }
        };
        const bool room = current.count() < static_cast<std::size_t>(e.k);
        for (std::size_t c = 0; c < m; ++c) {
            if (!current.test(c) && room) {
                Bitset next = current;
                next.set(c);
                propose(next);
            }
            if (current.test(c)) {
                Bitset without = current;
                without.reset(c);
                propose(without);
                for (std::size_t d = 0; d < m; ++d) {
                    if (current.test(d))
                        continue;
                    Bitset swapped = without;
                    swapped.set(d);
                    propose(swapped);
                }
            }
        }
        if (!improved)
            break;
        current = best_move;
        current_score = best_score;
    }
    ExtendedOutcome out = ExtendedOutcome::empty(e);
    out.selected = current;
    return maximal_completion(out, e);
}

inline ExtendedOutcome pav_local_search(const Election& e) {
    return pav_local_search(e, Bitset(e.num_candidates()));
}

} // namespace updown
