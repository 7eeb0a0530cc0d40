#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "updown/outcome.hpp"
#include "updown/pav.hpp"
#include "updown/rational.hpp"

namespace updown {

/// Scoring table of a generalized Thiele rule: f(z, s) is the score a voter
/// contributes when z of her approved and s of her disapproved candidates sit
/// in the committee. Constraints: f(0,0) = 0, f(.,0) nondecreasing, and
/// f(z,s) <= f(z,0) so vetoed company never helps.
struct ThieleScoring {
    std::vector<std::vector<Rational>> table; // [z][s], 0..k inclusive

    std::size_t bound() const { return table.empty() ? 0 : table.size() - 1; }

    const Rational& at(std::size_t z, std::size_t s) const { return table[z][s]; }

    void validate() const {
        if (table.empty())
            throw ValidationError("BadScoring: empty table");
        const std::size_t width = table.size();
        for (const auto& row : table)
            if (row.size() != width)
                throw ValidationError("BadScoring: table is not square");
        if (table[0][0] != 0)
            throw ValidationError("BadScoring: f(0,0) must be 0");
        for (std::size_t z = 1; z < width; ++z)
            if (table[z][0] < table[z - 1][0])
                throw ValidationError("BadScoring: f(z,0) must be nondecreasing");
        for (std::size_t z = 0; z < width; ++z)
            for (std::size_t s = 0; s < width; ++s)
                if (table[z][s] > table[z][0])
                    throw ValidationError("BadScoring: f(z,s) must not exceed f(z,0)");
    }

    /// f(z, s) = H(z): the scoring that ignores vetoes entirely (PAV).
    static ThieleScoring pav(std::size_t k) {
        auto h = harmonic_table(k);
        ThieleScoring f;
        f.table.assign(k + 1, std::vector<Rational>(k + 1));
        for (std::size_t z = 0; z <= k; ++z)
            for (std::size_t s = 0; s <= k; ++s)
                f.table[z][s] = h[z];
        return f;
    }

    /// f(z, s) = H(z) - s: each seated vetoed candidate costs one point.
    static ThieleScoring pav_minus_vetoes(std::size_t k) {
        auto h = harmonic_table(k);
        ThieleScoring f;
        f.table.assign(k + 1, std::vector<Rational>(k + 1));
        for (std::size_t z = 0; z <= k; ++z)
            for (std::size_t s = 0; s <= k; ++s)
                f.table[z][s] = h[z] - Rational(BigInt(s));
        return f;
    }
};

/// Exhaustive argmax of sum_i f(|A_i ∩ W|, |D_i ∩ W|) over W ⊆ C with
/// |W| ≤ k; ties by the global committee order. The vetoed side stays empty.
inline ExtendedOutcome thiele_optimize(const Election& e, const ThieleScoring& f,
                                       std::size_t guard = 20) {
    const std::size_t m = e.num_candidates();
    if (m > guard || m > 64)
        throw GuardExceeded("GuardExceeded: thiele_optimize needs m <= " +
                            std::to_string(guard) + ", got " + std::to_string(m));
    if (f.bound() < static_cast<std::size_t>(e.k))
        throw ValidationError("BadScoring: table bound below committee bound k");
    const std::size_t n = e.num_voters();
    std::vector<std::uint64_t> approve(n), disapprove(n);
    for (std::size_t i = 0; i < n; ++i) {
        approve[i] = mask_from_bitset(e.ballots[i].approve);
        disapprove[i] = mask_from_bitset(e.ballots[i].disapprove);
    }
    const std::uint64_t all = m == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m) - 1;
    const int k = e.k;

    bool have_best = false;
    Rational best_score(0);
    std::uint64_t best_mask = 0;
    for (std::uint64_t sel = 0;; ++sel) {
        if (std::popcount(sel) <= k) {
            Rational score(0);
            for (std::size_t i = 0; i < n; ++i)
                score += f.at(static_cast<std::size_t>(std::popcount(approve[i] & sel)),
                              static_cast<std::size_t>(std::popcount(disapprove[i] & sel)));
            if (!have_best || score > best_score ||
                (score == best_score && detail::mask_committee_prefer(sel, best_mask))) {
                have_best = true;
                best_score = score;
                best_mask = sel;
            }
        }
        if (sel == all)
            break;
    }
    ExtendedOutcome out = ExtendedOutcome::empty(e);
    out.selected = bitset_from_mask(m, best_mask);
    return out;
}

/// A scoring deficiency f(z,s) < f(z,0) turned into a concrete election the
/// induced Thiele rule mishandles.
struct ThieleCounterexample {
    long t = 0;        // block size that forces the violation
    Election election; // 3(t+z) candidates, k = 3(t+z), nBase voters
};

/// Builds the witness election for a deficient scoring value: the smallest
/// t > s with f(z,0) - f(z,s) > 2s/(t+z-s+1) yields an election where a
/// two-thirds group commonly approves t+z candidates, yet the rule prefers
/// dropping the s vetoed ones. Throws NoViolationPossible when
/// f(z,s) = f(z,0).
inline ThieleCounterexample thiele_counterexample(const ThieleScoring& f, std::size_t z,
                                                  std::size_t s, long n_base) {
    if (s < 1 || z > f.bound() || s > f.bound())
        throw ValidationError("BadParams: (z, s) outside the scoring table, s >= 1 required");
    if (n_base < 3 || n_base % 3 != 0)
        throw ValidationError("BadParams: voter count must be a positive multiple of 3");
    const Rational gap = f.at(z, 0) - f.at(z, s);
    if (gap == 0)
        throw NoViolationPossible("NoViolationPossible: f(z,s) equals f(z,0)");

    long t = static_cast<long>(s) + 1;
    while (!(gap * Rational(BigInt(t) + BigInt(z) - BigInt(s) + 1) > Rational(2 * BigInt(s))))
        ++t;

    const long tz = t + static_cast<long>(z);
    const long m = 3 * tz;
    std::vector<std::string> candidates;
    for (long c = 1; c <= m; ++c)
        candidates.push_back("c" + std::to_string(c));

    // T = c1..ct, C' = c(t+1)..c(t+z), the rest are dummies.
    std::vector<std::string> approved_all, approved_extra, vetoed_tail;
    for (long c = 0; c < t; ++c)
        approved_all.push_back(candidates[c]);
    for (std::size_t c = 0; c < z; ++c) {
        approved_all.push_back(candidates[t + static_cast<long>(c)]);
        approved_extra.push_back(candidates[t + static_cast<long>(c)]);
    }
    for (std::size_t c = 0; c < s; ++c)
        vetoed_tail.push_back(candidates[t - 1 - static_cast<long>(c)]);

    std::vector<RawBallot> ballots;
    for (long v = 1; v <= 2 * n_base / 3; ++v)
        ballots.push_back({"v" + std::to_string(v), approved_all, {}});
    for (long v = 2 * n_base / 3 + 1; v <= n_base; ++v)
        ballots.push_back({"v" + std::to_string(v), approved_extra, vetoed_tail});

    return {t, validate_election(candidates, static_cast<int>(m), ballots)};
}

} // namespace updown
