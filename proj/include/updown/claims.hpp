#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "updown/election.hpp"
#include "updown/outcome.hpp"
#include "updown/rational.hpp"

namespace updown {

/// Entitlement of a voter group in the symmetric model: the exact value of
/// the five-case closed formula, the branch that produced it, and the
/// definition-level integer guarantee.
///
/// The two can differ by one. The closed formula prices the adversary's
/// blocking set continuously at (n-|S|)/|S| per entitled unit, but the
/// cohesiveness definition only admits integer-sized sets, so the integer
/// level is computed against the discrete adversary (floored budget) rather
/// than by rounding the formula. The oracle equivalence suite pins this.
struct GroupEntitlement {
    Bitset group;
    std::size_t common_approved = 0;    // |A_S|
    std::size_t common_disapproved = 0; // |D_S|
    Rational formula_value;
    long entitlement = 0; // largest level the discrete adversary cannot block
    int case_index = 0;   // 1..5
};

namespace detail {

/// Smallest extension the group can be left with against any feasible
/// blocking set of at most `budget` items: j vetoed-by-the-group candidates
/// seated (each kills a veto and a slot), f filler candidates seated (each
/// kills a slot), r negatives of commonly approved candidates (each kills a
/// positive option). Sets touching the group's own side never help the
/// adversary, so this covers all of them.
inline long adversarial_min_extension(long common_a, long common_d, long k, long m,
                                      long budget) {
    const long fillers = m - common_a - common_d;
    long best = common_d + std::min(common_a, k);
    for (long j = 0; j <= std::min({common_d, k, budget}); ++j) {
        const long left = budget - j;
        const long f_cap = std::min(k - j, fillers);
        for (long f = 0; f <= std::min(f_cap, left); ++f) {
            const long r = std::min(common_a, left - f);
            const long ext = (common_d - j) + std::min(common_a - r, k - j - f);
            best = std::min(best, ext);
        }
    }
    return best;
}

inline long discrete_claim(long common_a, long common_d, long s, long n, long k, long m) {
    const long cap = common_d + std::min(common_a, k);
    for (long ell = cap; ell >= 1; --ell) {
        // the adversary may spend |T| <= (n-s)/s * ell, an integer
        const long budget = (n - s) * ell / s;
        if (adversarial_min_extension(common_a, common_d, k, m, budget) >= ell)
            return ell;
    }
    return 0;
}

} // namespace detail

/// The closed-form claim of a group. Branches are tested in listed order with
/// exact rational comparisons (cross-multiplied, so |S| = n is safe); the
/// first matching branch wins. Overlapping boundary conditions agree by
/// continuity, which the oracle equivalence test exercises.
inline GroupEntitlement claim_formula(const Election& e, const Bitset& group) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: claim_formula of an empty voter set");
    auto [common_a, common_d] = common_sets(e, group);

    const BigInt s = group.count();
    const BigInt n = e.num_voters();
    const BigInt m = e.num_candidates();
    const BigInt k = e.k;
    const BigInt a = common_a.count();
    const BigInt d = common_d.count();

    GroupEntitlement ge;
    ge.group = group;
    ge.common_approved = static_cast<std::size_t>(a);
    ge.common_disapproved = static_cast<std::size_t>(d);

    // case 1: (n / (n-s)) * k <= d
    if (n * k <= d * (n - s)) {
        ge.case_index = 1;
        ge.formula_value = Rational(d - k);
    }
    // case 2: ((n-s)/n) k <= d <= (n/(n-s)) k  and  ((2n-s)/n) a + ((n-s)/n) d >= k
    else if ((n - s) * k <= n * d && d * (n - s) <= n * k &&
             (2 * n - s) * a + (n - s) * d >= n * k) {
        ge.case_index = 2;
        ge.formula_value = Rational(s * (d + k), 2 * n - s);
    }
    // case 3: a + d >= k  and  d <= ((n-s)/n) k  and  a <= m - ((n-s)/n) k
    else if (a + d >= k && n * d <= (n - s) * k && n * a <= n * m - (n - s) * k) {
        ge.case_index = 3;
        ge.formula_value = Rational(s * k, n);
    }
    // case 4: a + d >= k  and  d <= ((n-s)/n) k  and  m - ((n-s)/n) k <= a
    //         and  a + k - m <= (s/n)(a + d)
    else if (a + d >= k && n * d <= (n - s) * k && n * m - (n - s) * k <= n * a &&
             n * (a + k - m) <= s * (a + d)) {
        ge.case_index = 4;
        ge.formula_value = Rational(a + k - m);
    } else {
        ge.case_index = 5;
        ge.formula_value = Rational(s * (d + a), n);
    }

    ge.entitlement = detail::discrete_claim(static_cast<long>(a), static_cast<long>(d),
                                            static_cast<long>(s), static_cast<long>(n),
                                            static_cast<long>(k), static_cast<long>(m));
    return ge;
}

/// Integer entitlement used by the auditors.
inline long claim_int(const Election& e, const Bitset& group) {
    return claim_formula(e, group).entitlement;
}

/// (|S|/n) * (|D_S| + min(k, |A_S|)): the simple cap on the claim, valid
/// except on the branches every k-committee satisfies unconditionally.
inline Rational claim_upper_bound(const Election& e, const Bitset& group) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: claim_upper_bound of an empty voter set");
    auto [common_a, common_d] = common_sets(e, group);
    const BigInt s = group.count();
    const BigInt n = e.num_voters();
    const BigInt a = common_a.count();
    const BigInt d = common_d.count();
    const BigInt capped = std::min(BigInt(e.k), a);
    return Rational(s * (d + capped), n);
}

/// Size of the largest X ⊆ A_S ∪ ¬D_S such that T ∪ X stays feasible.
/// Candidates of A_S already in T⁺ count toward X for free; fresh positive
/// picks are limited by the committee slots k − |T⁺| and by the vetoes in T.
inline std::size_t max_extension_size(const Election& e, const Bitset& group,
                                      const ExtendedOutcome& partial) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: max_extension_size of an empty voter set");
    if (!is_feasible(partial, e))
        throw ValidationError("InfeasibleT: partial outcome passed to max_extension_size");
    auto [common_a, common_d] = common_sets(e, group);

    const std::size_t t_pos = partial.selected.count();
    const std::size_t from_vetoes = (common_d & ~partial.selected).count();
    const std::size_t already_in = (common_a & partial.selected).count();
    const std::size_t fresh = (common_a & ~partial.selected & ~partial.vetoed).count();
    const std::size_t slots = static_cast<std::size_t>(e.k) - t_pos;
    return from_vetoes + already_in + std::min(fresh, slots);
}

/// Definition-level cohesiveness: the largest ℓ such that for every feasible
/// T over the extended space (3^m sign assignments, |T⁺| ≤ k) the group can
/// extend T with ℓ common candidates or outweighs it by |S|/n > ℓ/(|T|+ℓ).
/// Exponential; guarded. Ground truth for claim_formula.
inline long claim_oracle(const Election& e, const Bitset& group, std::size_t guard = 12) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: claim_oracle of an empty voter set");
    const std::size_t m = e.num_candidates();
    if (m > guard)
        throw GuardExceeded("GuardExceeded: claim_oracle needs m <= " + std::to_string(guard) +
                            ", got " + std::to_string(m));

    auto [common_a, common_d] = common_sets(e, group);
    const std::uint64_t a_mask = mask_from_bitset(common_a);
    const std::uint64_t d_mask = mask_from_bitset(common_d);
    const std::size_t k = static_cast<std::size_t>(e.k);

    // min_ext[t]: the smallest extension the adversary can leave us with
    // over all feasible T of total size t.
    std::vector<long> min_ext(m + 1, -1);
    std::vector<std::uint64_t> pos_stack(m + 1, 0), neg_stack(m + 1, 0);
    // Iterative base-3 sweep over sign assignments.
    std::vector<int> signs(m, 0);
    for (;;) {
        std::uint64_t pos = 0, neg = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (signs[c] == 1)
                pos |= std::uint64_t(1) << c;
            else if (signs[c] == 2)
                neg |= std::uint64_t(1) << c;
        }
        const std::size_t pos_count = static_cast<std::size_t>(std::popcount(pos));
        if (pos_count <= k) {
            const std::size_t size = pos_count + static_cast<std::size_t>(std::popcount(neg));
            const long from_vetoes = std::popcount(d_mask & ~pos);
            const long already_in = std::popcount(a_mask & pos);
            const long fresh = std::popcount(a_mask & ~pos & ~neg);
            const long slots = static_cast<long>(k - pos_count);
            const long ext = from_vetoes + already_in + std::min(fresh, slots);
            if (min_ext[size] < 0 || ext < min_ext[size])
                min_ext[size] = ext;
        }
        std::size_t c = 0;
        while (c < m && signs[c] == 2)
            signs[c++] = 0;
        if (c == m)
            break;
        ++signs[c];
    }

    const BigInt s = group.count();
    const BigInt n = e.num_voters();
    const long cap = static_cast<long>(common_d.count() + std::min(common_a.count(), k));
    for (long ell = cap; ell >= 1; --ell) {
        bool blocked = false;
        for (std::size_t t = 0; t <= m && !blocked; ++t) {
            if (min_ext[t] < 0 || min_ext[t] >= ell)
                continue;
            // escape clause |S|/n > ell/(t+ell), cross-multiplied
            if (!(s * (BigInt(t) + ell) > n * ell))
                blocked = true;
        }
        if (!blocked)
            return ell;
    }
    return 0;
}

} // namespace updown
