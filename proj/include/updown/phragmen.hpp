#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "updown/outcome.hpp"
#include "updown/rational.hpp"

namespace updown {

/// At equal purchase times, whether the positive or the negative item of the
/// lower candidate index goes first. Both orders preserve the rule's
/// guarantees; the default follows the global item order.
enum class PhragmenTieOrder { positive_first, negative_first };

/// One purchase event: the moment a support group's pooled budget covered the
/// unit cost, which item it bought, and who paid what.
struct PhragmenEvent {
    Rational time;
    SignedCandidate item;
    Bitset contributors;
    std::map<std::size_t, Rational> contributions; // voter -> payment, sums to 1
};

struct PhragmenTrace {
    std::vector<PhragmenEvent> events;
};

/// Continuous-income election over the extended candidate space. Every voter
/// earns at unit rate; a positive item c is purchasable by A_c while the
/// committee has room, a negative item ¬c by D_c at any point. Buying either
/// one removes its counterpart. Purchasers pay their full current budget and
/// reset to zero. Runs until nothing purchasable remains, so negatives keep
/// selling after the committee is full.
inline std::pair<ExtendedOutcome, PhragmenTrace>
phragmen_updown(const Election& e,
                PhragmenTieOrder tie_order = PhragmenTieOrder::positive_first) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    const std::size_t k = static_cast<std::size_t>(e.k);

    std::vector<Bitset> supporters(m, Bitset(n)), opponents(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c) {
        auto [a, d] = tally(e, c);
        supporters[c] = std::move(a);
        opponents[c] = std::move(d);
    }

    std::vector<Rational> budget(n, Rational(0));
    Rational now(0);
    std::vector<bool> resolved(m, false);
    ExtendedOutcome outcome = ExtendedOutcome::empty(e);
    PhragmenTrace trace;

    for (;;) {
        // Earliest moment a group's pooled budget reaches 1, given that every
        // voter accrues at rate 1 since `now`.
        auto reach_time = [&](const Bitset& group) -> Rational {
            Rational pooled(0);
            for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i))
                pooled += budget[i];
            Rational deficit = Rational(1) - pooled;
            if (deficit < 0)
                deficit = 0; // groups never overshoot between events
            return now + deficit / Rational(BigInt(group.count()));
        };

        std::optional<Rational> best_time;
        std::optional<SignedCandidate> best_item;
        auto consider = [&](std::size_t c, Sign sign) {
            const Bitset& group = sign == Sign::positive ? supporters[c] : opponents[c];
            if (group.none())
                return;
            if (sign == Sign::positive && outcome.selected.count() >= k)
                return;
            Rational t = reach_time(group);
            if (!best_time || t < *best_time) {
                best_time = t;
                best_item = SignedCandidate{c, sign};
            }
        };
        for (std::size_t c = 0; c < m; ++c) {
            if (resolved[c])
                continue;
            if (tie_order == PhragmenTieOrder::positive_first) {
                consider(c, Sign::positive);
                consider(c, Sign::negative);
            } else {
                consider(c, Sign::negative);
                consider(c, Sign::positive);
            }
        }
        if (!best_item)
            break;

        const std::size_t c = best_item->index;
        const Bitset& group = best_item->sign == Sign::positive ? supporters[c] : opponents[c];
        const Rational elapsed = *best_time - now;
        now = *best_time;

        PhragmenEvent ev;
        ev.time = now;
        ev.item = *best_item;
        ev.contributors = group;
        for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i)) {
            ev.contributions[i] = budget[i] + elapsed;
            budget[i] = 0;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!group.test(i))
                budget[i] += elapsed;

        resolved[c] = true;
        if (best_item->sign == Sign::positive)
            outcome.selected.set(c);
        else
            outcome.vetoed.set(c);
        trace.events.push_back(std::move(ev));
    }
    return {outcome, trace};
}

} // namespace updown
