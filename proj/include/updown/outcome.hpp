#pragma once

#include <cstddef>

#include "updown/election.hpp"
#include "updown/rational.hpp"

namespace updown {

enum class Sign { positive, negative };

/// A candidate index together with a sign: `negative` stands for the virtual
/// counterpart that represents keeping the candidate out.
struct SignedCandidate {
    std::size_t index = 0;
    Sign sign = Sign::positive;

    bool operator==(const SignedCandidate& other) const = default;
};

/// An outcome over the extended candidate space, stored as two disjoint sets
/// of positive indices: `selected` holds the elected candidates, `vetoed`
/// holds those whose negative counterparts were chosen.
struct ExtendedOutcome {
    Bitset selected;
    Bitset vetoed;

    static ExtendedOutcome empty(const Election& e) {
        return {Bitset(e.num_candidates()), Bitset(e.num_candidates())};
    }

    bool operator==(const ExtendedOutcome& other) const = default;
};

/// Feasibility: at most k elected and no candidate both elected and vetoed.
inline bool is_feasible(const ExtendedOutcome& o, const Election& e) {
    return o.selected.count() <= static_cast<std::size_t>(e.k) &&
           (o.selected & o.vetoed).none();
}

inline void require_feasible(const ExtendedOutcome& o, const Election& e,
                             const char* where) {
    if (o.selected.size() != e.num_candidates() || o.vetoed.size() != e.num_candidates())
        throw ValidationError(std::string("InfeasibleOutcome: wrong universe size in ") + where);
    if (!is_feasible(o, e))
        throw ValidationError(std::string("InfeasibleOutcome: ") + where);
}

/// Symmetric-model satisfaction of one voter:
/// |A_i ∩ selected| + |D_i ∩ vetoed|.
inline std::size_t satisfaction(const Election& e, const ExtendedOutcome& o, std::size_t voter) {
    const Ballot& b = e.ballots[voter];
    return (b.approve & o.selected).count() + (b.disapprove & o.vetoed).count();
}

/// Exact mean satisfaction over a nonempty voter group.
inline Rational avg_satisfaction(const Election& e, const ExtendedOutcome& o, const Bitset& group) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: avg_satisfaction of an empty voter set");
    BigInt total = 0;
    for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i))
        total += satisfaction(e, o, i);
    return Rational(total, BigInt(group.count()));
}

/// Vetoes every unselected candidate. Idempotent; never lowers any voter's
/// satisfaction, so audits may apply it before judging an outcome.
inline ExtendedOutcome maximal_completion(const ExtendedOutcome& o, const Election& e) {
    require_feasible(o, e, "maximal_completion");
    ExtendedOutcome out = o;
    out.vetoed = ~o.selected;
    return out;
}

/// Global committee tie-break: larger committees first, then the
/// lexicographically smaller sorted index sequence.
inline bool committee_prefer(const Bitset& a, const Bitset& b) {
    if (a.count() != b.count())
        return a.count() > b.count();
    return lex_before(a, b);
}

} // namespace updown
