#pragma once

// Test-side reference implementations. These stay independent of the library
// code paths they check: the classic rules are re-derived from their textbook
// definitions, the extended PAV optimum enumerates the full signed space, and
// the veto checker sweeps every candidate subset.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "updown/updown.hpp"

namespace support {

using namespace updown;

/// Varied generation parameters for property batches, derived from one seed
/// stream.
inline GenParams trial_params(std::mt19937_64& seeder, std::size_t max_n, std::size_t max_m,
                              bool approval_only = false) {
    GenParams p;
    p.n = 1 + seeder() % max_n;
    p.m = 1 + seeder() % max_m;
    p.k = 1 + static_cast<int>(seeder() % p.m);
    static const Rational approve_choices[] = {Rational(1, 4), Rational(1, 3), Rational(1, 2)};
    static const Rational veto_choices[] = {Rational(1, 6), Rational(1, 4), Rational(1, 3)};
    p.p_approve = approve_choices[seeder() % 3];
    p.p_disapprove = approval_only ? Rational(0) : veto_choices[seeder() % 3];
    p.seed = seeder();
    return p;
}

/// Classic sequential Phragmén on approval ballots: unit prices, continuous
/// income, buy when a support group's pooled budget reaches 1, stop at k.
inline std::vector<std::size_t> classic_seq_phragmen(const Election& e) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    std::vector<Bitset> supporters(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c)
        supporters[c] = tally(e, c).first;

    std::vector<Rational> budget(n, Rational(0));
    std::vector<bool> elected(m, false);
    std::vector<std::size_t> order;
    Rational now(0);
    while (order.size() < static_cast<std::size_t>(e.k)) {
        bool found = false;
        Rational best_time(0);
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (elected[c] || supporters[c].none())
                continue;
            Rational pooled(0);
            for (auto i = supporters[c].find_first(); i != Bitset::npos;
                 i = supporters[c].find_next(i))
                pooled += budget[i];
            Rational t = now + (Rational(1) - pooled) / Rational(BigInt(supporters[c].count()));
            if (!found || t < best_time) {
                found = true;
                best_time = t;
                best_c = c;
            }
        }
        if (!found)
            break;
        const Rational elapsed = best_time - now;
        now = best_time;
        for (std::size_t i = 0; i < n; ++i)
            budget[i] = supporters[best_c].test(i) ? Rational(0) : budget[i] + elapsed;
        elected[best_c] = true;
        order.push_back(best_c);
    }
    return order;
}

/// Classic PAV: the size-k committee maximizing the harmonic approval score,
/// lexicographically smallest among the optima.
inline Bitset classic_pav(const Election& e) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    auto h = harmonic_table(m);
    std::vector<std::uint64_t> approve(n);
    for (std::size_t i = 0; i < n; ++i)
        approve[i] = mask_from_bitset(e.ballots[i].approve);

    bool have = false;
    Rational best_score(0);
    std::uint64_t best = 0;
    const std::uint64_t top = std::uint64_t(1) << m;
    for (std::uint64_t sel = 0; sel < top; ++sel) {
        if (std::popcount(sel) != e.k)
            continue;
        Rational score(0);
        for (std::size_t i = 0; i < n; ++i)
            score += h[static_cast<std::size_t>(std::popcount(approve[i] & sel))];
        const Bitset as_set = bitset_from_mask(m, sel);
        if (!have || score > best_score ||
            (score == best_score && lex_before(as_set, bitset_from_mask(m, best)))) {
            have = true;
            best_score = score;
            best = sel;
        }
    }
    return bitset_from_mask(m, best);
}

/// Classic Method of Equal Shares: unit prices, budgets k/n, smallest
/// equal-share rho first, ties by candidate index.
inline Bitset classic_mes(const Election& e) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    std::vector<Bitset> supporters(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c)
        supporters[c] = tally(e, c).first;
    std::vector<Rational> budget(n, Rational(BigInt(e.k), BigInt(n)));
    Bitset selected(m);

    while (selected.count() < static_cast<std::size_t>(e.k)) {
        bool found = false;
        Rational best_rho(0);
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (selected.test(c) || supporters[c].none())
                continue;
            std::vector<Rational> b;
            Rational pooled(0);
            for (auto i = supporters[c].find_first(); i != Bitset::npos;
                 i = supporters[c].find_next(i)) {
                b.push_back(budget[i]);
                pooled += budget[i];
            }
            if (pooled < 1)
                continue;
            std::sort(b.begin(), b.end());
            Rational prefix(0);
            Rational rho(0);
            for (std::size_t j = 0; j < b.size(); ++j) {
                rho = (Rational(1) - prefix) / Rational(BigInt(b.size() - j));
                if (rho <= b[j])
                    break;
                prefix += b[j];
            }
            if (!found || rho < best_rho) {
                found = true;
                best_rho = rho;
                best_c = c;
            }
        }
        if (!found)
            break;
        for (auto i = supporters[best_c].find_first(); i != Bitset::npos;
             i = supporters[best_c].find_next(i))
            budget[i] -= std::min(budget[i], best_rho);
        selected.set(best_c);
    }
    return selected;
}

/// Best symmetric PAV score over the full signed outcome space: all
/// assignments of {out, elected, vetoed} per candidate with at most k
/// elected. The collapse to maximal positive selections must match this.
inline Rational extended_pav_best_score(const Election& e) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    auto h = harmonic_table(m);
    std::vector<std::uint64_t> approve(n), disapprove(n);
    for (std::size_t i = 0; i < n; ++i) {
        approve[i] = mask_from_bitset(e.ballots[i].approve);
        disapprove[i] = mask_from_bitset(e.ballots[i].disapprove);
    }
    Rational best(0); // the empty outcome scores 0
    std::vector<int> signs(m, 0);
    for (;;) {
        std::uint64_t pos = 0, neg = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (signs[c] == 1)
                pos |= std::uint64_t(1) << c;
            else if (signs[c] == 2)
                neg |= std::uint64_t(1) << c;
        }
        if (std::popcount(pos) <= e.k) {
            Rational score(0);
            for (std::size_t i = 0; i < n; ++i)
                score += h[static_cast<std::size_t>(std::popcount(approve[i] & pos) +
                                                    std::popcount(disapprove[i] & neg))];
            best = std::max(best, score);
        }
        std::size_t c = 0;
        while (c < m && signs[c] == 2)
            signs[c++] = 0;
        if (c == m)
            break;
        ++signs[c];
    }
    return best;
}

/// Group Veto checked the literal way, over every nonempty candidate subset.
/// Validates the library's restriction to subsets of the elected set.
inline bool full_group_veto_pass(const Election& e, const ExtendedOutcome& o) {
    const std::size_t m = e.num_candidates();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << m); ++mask) {
        const Bitset candidates = bitset_from_mask(m, mask);
        const auto vt = veto_threshold(e, candidates);
        if (vt.level && static_cast<long>((o.selected & candidates).count()) > *vt.level)
            return false;
    }
    return true;
}

/// Classic EJR cohesiveness entitlement on approval ballots:
/// min(|A_S|, floor(|S| k / n)).
inline long classic_entitlement(const Election& e, const Bitset& group) {
    auto [common_a, common_d] = common_sets(e, group);
    (void)common_d;
    const BigInt by_size = floor_of(Rational(BigInt(group.count()) * e.k, BigInt(e.num_voters())));
    return static_cast<long>(std::min(BigInt(common_a.count()), by_size));
}

/// MES with explicit prices and starting budget; the reference for tax_mes
/// and for pinning the fixture discrepancy between budgets k/n and 1.
inline Bitset mes_reference(const Election& e, const std::vector<Rational>& price,
                            const Rational& initial_budget) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    std::vector<Bitset> supporters(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c)
        supporters[c] = tally(e, c).first;
    std::vector<Rational> budget(n, initial_budget);
    Bitset selected(m);

    while (selected.count() < static_cast<std::size_t>(e.k)) {
        bool found = false;
        Rational best_rho(0);
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (selected.test(c) || price[c] <= 0 || supporters[c].none())
                continue;
            std::vector<Rational> b;
            Rational pooled(0);
            for (auto i = supporters[c].find_first(); i != Bitset::npos;
                 i = supporters[c].find_next(i)) {
                b.push_back(budget[i]);
                pooled += budget[i];
            }
            if (pooled < price[c])
                continue;
            std::sort(b.begin(), b.end());
            Rational prefix(0);
            Rational rho(0);
            for (std::size_t j = 0; j < b.size(); ++j) {
                rho = (price[c] - prefix) / Rational(BigInt(b.size() - j));
                if (rho <= b[j])
                    break;
                prefix += b[j];
            }
            if (!found || rho < best_rho) {
                found = true;
                best_rho = rho;
                best_c = c;
            }
        }
        if (!found)
            break;
        for (auto i = supporters[best_c].find_first(); i != Bitset::npos;
             i = supporters[best_c].find_next(i))
            budget[i] -= std::min(budget[i], best_rho);
        selected.set(best_c);
    }
    return selected;
}

} // namespace support
