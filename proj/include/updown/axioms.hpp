#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "updown/claims.hpp"
#include "updown/election.hpp"
#include "updown/outcome.hpp"
#include "updown/rational.hpp"

namespace updown {

enum class Axiom {
    base_ejr,
    base_pjr,
    phragmen_avg,
    pav_avg,
    ejpr,
    pjpr,
    group_veto,
    weak_group_veto,
};

inline const char* axiom_name(Axiom a) {
    switch (a) {
    case Axiom::base_ejr: return "base-ejr";
    case Axiom::base_pjr: return "base-pjr";
    case Axiom::phragmen_avg: return "phragmen-avg";
    case Axiom::pav_avg: return "pav-avg";
    case Axiom::ejpr: return "ejpr";
    case Axiom::pjpr: return "pjpr";
    case Axiom::group_veto: return "group-veto";
    default: return "weak-group-veto";
    }
}

/// One violation: the group (and candidate set, where the axiom names one),
/// what it was owed and what it got. Re-checkable from the election and
/// outcome alone.
struct Witness {
    Bitset group;
    std::optional<Bitset> candidate_set;
    Rational required;
    Rational achieved;
    std::optional<Rational> achieved_raw; // before maximal completion, where it differs

    bool operator==(const Witness& other) const = default;
};

struct AuditReport {
    Axiom axiom = Axiom::base_ejr;
    bool pass = true;
    std::vector<Witness> witnesses;
    std::size_t guard = 0;
    std::string sweep;        // "voter-subsets" or "candidate-subsets"
    ExtendedOutcome audited;  // the outcome actually judged (completed for base axioms)

    bool operator==(const AuditReport& other) const = default;
};

namespace detail {

inline void check_voter_guard(const Election& e, std::size_t guard, const char* who) {
    if (e.num_voters() > guard || e.num_voters() > 63)
        throw GuardExceeded(std::string("GuardExceeded: ") + who + " sweeps 2^n subsets, needs n <= " +
                            std::to_string(std::min<std::size_t>(guard, 63)) + ", got " +
                            std::to_string(e.num_voters()));
}

inline void sort_witnesses(std::vector<Witness>& ws) {
    std::sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
        if (a.group != b.group)
            return lex_before(a.group, b.group);
        if (a.candidate_set.has_value() != b.candidate_set.has_value())
            return !a.candidate_set.has_value();
        if (a.candidate_set && *a.candidate_set != *b.candidate_set)
            return lex_before(*a.candidate_set, *b.candidate_set);
        return false;
    });
}

inline AuditReport finish(Axiom axiom, std::vector<Witness> witnesses, std::size_t guard,
                          std::string sweep, ExtendedOutcome audited) {
    sort_witnesses(witnesses);
    AuditReport r;
    r.axiom = axiom;
    r.pass = witnesses.empty();
    r.witnesses = std::move(witnesses);
    r.guard = guard;
    r.sweep = std::move(sweep);
    r.audited = std::move(audited);
    return r;
}

} // namespace detail

/// Base EJR: every group must contain a voter whose satisfaction under the
/// maximal completion reaches the group's claim. Sweeps all voter subsets.
inline AuditReport audit_base_ejr(const Election& e, const ExtendedOutcome& o,
                                  std::size_t guard = 16) {
    detail::check_voter_guard(e, guard, "audit_base_ejr");
    require_feasible(o, e, "audit_base_ejr");
    const ExtendedOutcome completed = maximal_completion(o, e);
    const std::size_t n = e.num_voters();

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        const Bitset group = bitset_from_mask(n, mask);
        const long required = claim_int(e, group);
        if (required == 0)
            continue;
        long best = -1, best_raw = -1;
        for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i)) {
            best = std::max(best, static_cast<long>(satisfaction(e, completed, i)));
            best_raw = std::max(best_raw, static_cast<long>(satisfaction(e, o, i)));
        }
        if (best < required) {
            Witness w;
            w.group = group;
            w.required = Rational(required);
            w.achieved = Rational(best);
            w.achieved_raw = Rational(best_raw);
            witnesses.push_back(std::move(w));
        }
    }
    return detail::finish(Axiom::base_ejr, std::move(witnesses), guard, "voter-subsets", completed);
}

/// Base PJR: the group's combined representation — commonly reachable
/// elected candidates plus vetoed ones — must reach the claim.
inline AuditReport audit_base_pjr(const Election& e, const ExtendedOutcome& o,
                                  std::size_t guard = 16) {
    detail::check_voter_guard(e, guard, "audit_base_pjr");
    require_feasible(o, e, "audit_base_pjr");
    const ExtendedOutcome completed = maximal_completion(o, e);
    const std::size_t n = e.num_voters();

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        const Bitset group = bitset_from_mask(n, mask);
        const long required = claim_int(e, group);
        if (required == 0)
            continue;
        Bitset union_a(e.num_candidates()), union_d(e.num_candidates());
        for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i)) {
            union_a |= e.ballots[i].approve;
            union_d |= e.ballots[i].disapprove;
        }
        const long achieved = static_cast<long>((union_a & completed.selected).count() +
                                                (union_d & completed.vetoed).count());
        if (achieved < required) {
            const long raw = static_cast<long>((union_a & o.selected).count() +
                                               (union_d & o.vetoed).count());
            Witness w;
            w.group = group;
            w.required = Rational(required);
            w.achieved = Rational(achieved);
            w.achieved_raw = Rational(raw);
            witnesses.push_back(std::move(w));
        }
    }
    return detail::finish(Axiom::base_pjr, std::move(witnesses), guard, "voter-subsets", completed);
}

enum class AvgBoundKind { phragmen, pav };

/// Average-satisfaction floors of the two symmetric rules, checked for every
/// group against its exact claim value:
///   phragmen:  avg >= (claim - 1) / 2
///   pav:       avg >= (1 - 2/(k+4)) * claim - 3/2
inline AuditReport audit_avgsat_bound(const Election& e, const ExtendedOutcome& o,
                                      AvgBoundKind kind, std::size_t guard = 16) {
    const char* who = kind == AvgBoundKind::phragmen ? "audit_avgsat_bound(phragmen)"
                                                     : "audit_avgsat_bound(pav)";
    detail::check_voter_guard(e, guard, who);
    require_feasible(o, e, who);
    const ExtendedOutcome completed = maximal_completion(o, e);
    const std::size_t n = e.num_voters();
    const Rational shrink = Rational(1) - Rational(2, BigInt(e.k) + 4);

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        const Bitset group = bitset_from_mask(n, mask);
        const Rational claim = claim_formula(e, group).formula_value;
        const Rational required = kind == AvgBoundKind::phragmen
                                      ? (claim - 1) / 2
                                      : shrink * claim - Rational(3, 2);
        const Rational achieved = avg_satisfaction(e, completed, group);
        if (achieved < required) {
            Witness w;
            w.group = group;
            w.required = required;
            w.achieved = achieved;
            w.achieved_raw = avg_satisfaction(e, o, group);
            witnesses.push_back(std::move(w));
        }
    }
    return detail::finish(kind == AvgBoundKind::phragmen ? Axiom::phragmen_avg : Axiom::pav_avg,
                          std::move(witnesses), guard, "voter-subsets", completed);
}

namespace detail {

/// Level computation shared with the audits: per commonly approved candidate,
/// the largest ℓ it can back is floor((|S| - |D_c|)·k/n); the group level is
/// the h-index of those values, capped at k.
inline long cohesion_level(const Election& e, std::size_t group_size, const Bitset& common_a,
                           const std::vector<long>& opponent_counts) {
    if (common_a.none())
        return 0;
    const BigInt s = group_size;
    const BigInt n = e.num_voters();
    const BigInt k = e.k;
    std::vector<long> backable;
    for (auto c = common_a.find_first(); c != Bitset::npos; c = common_a.find_next(c)) {
        const BigInt margin = s - opponent_counts[c];
        if (margin <= 0)
            continue;
        BigInt ell = floor_of(Rational(margin * k, n));
        if (ell > e.k)
            ell = e.k;
        if (ell >= 1)
            backable.push_back(static_cast<long>(ell));
    }
    std::sort(backable.begin(), backable.end(), std::greater<>());
    long level = 0;
    for (std::size_t i = 0; i < backable.size(); ++i)
        level = std::max(level, std::min(backable[i], static_cast<long>(i) + 1));
    return level;
}

inline std::vector<long> all_opponent_counts(const Election& e) {
    std::vector<long> counts(e.num_candidates(), 0);
    for (std::size_t c = 0; c < e.num_candidates(); ++c)
        counts[c] = static_cast<long>(opponent_count(e, c));
    return counts;
}

} // namespace detail

/// Largest ℓ ≤ k such that at least ℓ commonly approved candidates each keep
/// |S| - |D_c| >= ℓ·n/k. Zero when no commonly approved candidate qualifies.
inline long positive_cohesion_level(const Election& e, const Bitset& group) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: positive_cohesion_level of an empty voter set");
    auto [common_a, common_d] = common_sets(e, group);
    (void)common_d;
    return detail::cohesion_level(e, group.count(), common_a, detail::all_opponent_counts(e));
}

namespace detail {

inline AuditReport audit_positive_representation(const Election& e, const ExtendedOutcome& o,
                                                 bool per_voter, std::size_t guard) {
    const char* who = per_voter ? "audit_ejpr" : "audit_pjpr";
    check_voter_guard(e, guard, who);
    require_feasible(o, e, who);
    const std::size_t n = e.num_voters();
    const auto opponents = all_opponent_counts(e);

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        const Bitset group = bitset_from_mask(n, mask);
        const long ell = cohesion_level(e, group.count(), common_sets(e, group).first, opponents);
        if (ell < 1)
            continue;
        long achieved;
        if (per_voter) {
            achieved = 0;
            for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i))
                achieved = std::max(achieved,
                                    static_cast<long>((e.ballots[i].approve & o.selected).count()));
        } else {
            Bitset union_a(e.num_candidates());
            for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i))
                union_a |= e.ballots[i].approve;
            achieved = static_cast<long>((union_a & o.selected).count());
        }
        if (achieved < ell) {
            Witness w;
            w.group = group;
            w.required = Rational(ell);
            w.achieved = Rational(achieved);
            witnesses.push_back(std::move(w));
        }
    }
    return finish(per_voter ? Axiom::ejpr : Axiom::pjpr, std::move(witnesses), guard,
                  "voter-subsets", o);
}

} // namespace detail

/// EJPR: some member of every positively cohesive group holds its ℓ approved
/// seats personally. Only the elected set is consulted.
inline AuditReport audit_ejpr(const Election& e, const ExtendedOutcome& o,
                              std::size_t guard = 16) {
    return detail::audit_positive_representation(e, o, true, guard);
}

/// PJPR: the group holds ℓ approved seats collectively.
inline AuditReport audit_pjpr(const Election& e, const ExtendedOutcome& o,
                              std::size_t guard = 16) {
    return detail::audit_positive_representation(e, o, false, guard);
}

/// The maximal group commonly vetoing T, and the smallest ℓ (if any, up to
/// min(k, |T|)) at which that group is negatively cohesive:
/// |S*| >= |ap(T)| - ℓ·n/k. The empty S* is admitted — a barely-approved T
/// is capped even with no vetoers on record.
struct VetoThreshold {
    Bitset vetoers;            // S*
    std::optional<long> level; // smallest valid ℓ
};

inline VetoThreshold veto_threshold(const Election& e, const Bitset& candidates) {
    if (candidates.none())
        throw EmptyGroup("EmptyT: veto_threshold of an empty candidate set");
    const std::size_t n = e.num_voters();
    Bitset vetoers(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((candidates & ~e.ballots[i].disapprove).none())
            vetoers.set(i);
    const BigInt approvers = approvers_of_set(e, candidates).count();
    const BigInt star = vetoers.count();
    const BigInt nn = e.num_voters();
    const BigInt k = e.k;

    // smallest positive ℓ with ℓ·n >= (|ap(T)| - |S*|)·k, capped by min(k,|T|)
    BigInt lo = ceil_of(Rational((approvers - star) * k, nn));
    if (lo < 1)
        lo = 1;
    const BigInt cap = std::min(BigInt(e.k), BigInt(candidates.count()));
    VetoThreshold out;
    out.vetoers = vetoers;
    if (lo <= cap)
        out.level = static_cast<long>(lo);
    return out;
}

namespace detail {

/// The veto audits only need T ⊆ W: replacing a violating T by T ∩ W keeps
/// |W ∩ T| while shrinking ap(T) and growing the vetoing group, so the
/// threshold only drops and the size cap stays met. Sweeping subsets of the
/// elected set is therefore exact, and the guard applies to |W|.
inline void check_selected_guard(const ExtendedOutcome& o, std::size_t guard, const char* who) {
    const std::size_t w = o.selected.count();
    if (w > guard || w > 63)
        throw GuardExceeded(std::string("GuardExceeded: ") + who +
                            " sweeps subsets of the elected set, needs |selected| <= " +
                            std::to_string(std::min<std::size_t>(guard, 63)) + ", got " +
                            std::to_string(w));
}

} // namespace detail

/// Group Veto: for every candidate set T with a valid threshold ℓ0, the
/// committee may seat at most ℓ0 members of T. Checking the smallest valid ℓ
/// covers all larger ones, and checking T within the elected set covers all T.
inline AuditReport audit_group_veto(const Election& e, const ExtendedOutcome& o,
                                    std::size_t guard = 16) {
    detail::check_selected_guard(o, guard, "audit_group_veto");
    require_feasible(o, e, "audit_group_veto");
    const std::vector<std::size_t> elected = indices_of(o.selected);
    const std::size_t w = elected.size();
    const std::size_t m = e.num_candidates();

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << w); ++mask) {
        Bitset candidates(m);
        for (std::size_t b = 0; b < w; ++b)
            if (mask >> b & 1u)
                candidates.set(elected[b]);
        const VetoThreshold vt = veto_threshold(e, candidates);
        if (!vt.level)
            continue;
        const long achieved = static_cast<long>((o.selected & candidates).count());
        if (achieved > *vt.level) {
            Witness w2;
            w2.group = vt.vetoers;
            w2.candidate_set = candidates;
            w2.required = Rational(*vt.level);
            w2.achieved = Rational(achieved);
            witnesses.push_back(std::move(w2));
        }
    }
    return detail::finish(Axiom::group_veto, std::move(witnesses), guard,
                          "elected-subsets", o);
}

/// Pivot candidates for the weak veto axiom: unopposed, approved by someone,
/// and the common approval set of their approvers is exactly {c*}.
inline std::vector<std::size_t> weak_veto_pivots(const Election& e) {
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < e.num_candidates(); ++c) {
        auto [supporters, opponents] = tally(e, c);
        if (opponents.any() || supporters.none())
            continue;
        auto [common_a, common_d] = common_sets(e, supporters);
        (void)common_d;
        if (common_a.count() == 1 && common_a.test(c))
            pivots.push_back(c);
    }
    return pivots;
}

/// Weak Group Veto for uncapped priceable rules. For every unelected pivot
/// c* with approver group S', every candidate set T commonly vetoed by a
/// nonempty S* = {i : T ⊆ D_i} with |S*| >= |ap(T)| - ℓ·|S'| must keep
/// |W ∩ T| < ℓ. Only nonempty vetoing groups count: the vacuous T ⊆ D_∅
/// admission that plain Group Veto tolerates breaks down here, because a
/// strict seat bound cannot survive purchases that land at the exact moment
/// the pivot's supporters become solvent. Throws NotApplicable when no pivot
/// exists.
inline AuditReport audit_weak_group_veto(const Election& e, const ExtendedOutcome& o,
                                         std::size_t guard = 16) {
    detail::check_selected_guard(o, guard, "audit_weak_group_veto");
    require_feasible(o, e, "audit_weak_group_veto");
    const auto pivots = weak_veto_pivots(e);
    if (pivots.empty())
        throw NotApplicable("NotApplicable: no candidate c* with D_c* empty and "
                            "common approval of its supporters exactly {c*}");
    const std::vector<std::size_t> elected = indices_of(o.selected);
    const std::size_t w = elected.size();
    const std::size_t m = e.num_candidates();

    std::vector<std::size_t> live_pivots;
    for (std::size_t pivot : pivots)
        if (!o.selected.test(pivot)) // the axiom conditions on c* staying out
            live_pivots.push_back(pivot);

    std::vector<Witness> witnesses;
    for (std::uint64_t mask = 1; !live_pivots.empty() && mask < (std::uint64_t(1) << w); ++mask) {
        Bitset candidates(m);
        for (std::size_t b = 0; b < w; ++b)
            if (mask >> b & 1u)
                candidates.set(elected[b]);
        Bitset vetoers(e.num_voters());
        for (std::size_t i = 0; i < e.num_voters(); ++i)
            if ((candidates & ~e.ballots[i].disapprove).none())
                vetoers.set(i);
        const BigInt approvers = approvers_of_set(e, candidates).count();
        const BigInt star = vetoers.count();
        const BigInt cap = std::min(BigInt(e.k), BigInt(candidates.count()));
        const long achieved = static_cast<long>((o.selected & candidates).count());
        for (std::size_t pivot : live_pivots) {
            const BigInt prime = approver_count(e, pivot);
            BigInt lo = ceil_of(Rational(approvers - star, prime));
            if (lo < 1)
                lo = 1;
            if (lo > cap)
                continue;
            if (achieved >= static_cast<long>(lo)) {
                Witness w;
                w.group = vetoers;
                w.candidate_set = candidates;
                w.required = Rational(lo);
                w.achieved = Rational(achieved);
                witnesses.push_back(std::move(w));
            }
        }
    }
    return detail::finish(Axiom::weak_group_veto, std::move(witnesses), guard,
                          "elected-subsets", o);
}

} // namespace updown
