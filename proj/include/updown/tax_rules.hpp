#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "updown/outcome.hpp"
#include "updown/rational.hpp"

namespace updown {

/// Per-voter budgets and payments certifying a priceable rule's run.
/// Payments are nonnegative, flow only from approvers, and sum per elected
/// candidate to exactly that candidate's price.
struct PaymentLedger {
    Rational initial_budget;                               // allocation per voter
    std::vector<std::map<std::size_t, Rational>> payments; // [voter] -> candidate -> amount
    std::vector<Rational> residual;                        // initial_budget - spend
    std::vector<std::size_t> order;                        // candidates in purchase order
};

/// Opposition-taxed price |A_c| / (|A_c| - |D_c|); candidates without a
/// strict supporter majority are excluded from the pool (nullopt).
inline std::optional<Rational> opposition_price(const Election& e, std::size_t c) {
    const BigInt a = approver_count(e, c);
    const BigInt d = opponent_count(e, c);
    if (a <= d)
        return std::nullopt;
    return Rational(a, a - d);
}

namespace detail {

/// Smallest rho with sum over supporters of min(budget, rho) = price.
/// Requires the pooled budget to cover the price.
inline Rational solve_rho(std::vector<Rational> budgets, const Rational& price) {
    std::sort(budgets.begin(), budgets.end());
    Rational prefix(0);
    for (std::size_t j = 0; j < budgets.size(); ++j) {
        const Rational rho = (price - prefix) / Rational(BigInt(budgets.size() - j));
        if (rho <= budgets[j])
            return rho;
        prefix += budgets[j];
    }
    throw ValidationError("InfeasibleRho: pooled budget below price");
}

} // namespace detail

/// Method of Equal Shares over the opposition-priced pool. Voters start with
/// k/n; each round elects the candidate affordable at the smallest equal
/// share rho (ties by candidate index). With `complete`, the remaining pool
/// is appended greedily by net approval (|A_c| - |D_c| descending, ties by
/// index) until the committee bound. The vetoed side stays empty: the
/// asymmetric model reads only the elected set.
inline std::pair<ExtendedOutcome, PaymentLedger> tax_mes(const Election& e,
                                                         bool complete = false) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    const std::size_t k = static_cast<std::size_t>(e.k);

    std::vector<std::optional<Rational>> price(m);
    std::vector<Bitset> supporters(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c) {
        price[c] = opposition_price(e, c);
        supporters[c] = tally(e, c).first;
    }

    PaymentLedger ledger;
    ledger.initial_budget = Rational(BigInt(e.k), BigInt(n));
    ledger.payments.assign(n, {});
    std::vector<Rational> budget(n, ledger.initial_budget);
    ExtendedOutcome outcome = ExtendedOutcome::empty(e);

    while (outcome.selected.count() < k) {
        std::optional<Rational> best_rho;
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (!price[c] || outcome.selected.test(c))
                continue;
            Rational pooled(0);
            std::vector<Rational> group_budgets;
            for (auto i = supporters[c].find_first(); i != Bitset::npos;
                 i = supporters[c].find_next(i)) {
                pooled += budget[i];
                group_budgets.push_back(budget[i]);
            }
            if (pooled < *price[c])
                continue;
            Rational rho = detail::solve_rho(std::move(group_budgets), *price[c]);
            if (!best_rho || rho < *best_rho) {
                best_rho = rho;
                best_c = c;
            }
        }
        if (!best_rho)
            break;
        for (auto i = supporters[best_c].find_first(); i != Bitset::npos;
             i = supporters[best_c].find_next(i)) {
            const Rational paid = std::min(budget[i], *best_rho);
            if (paid > 0)
                ledger.payments[i][best_c] = paid;
            budget[i] -= paid;
        }
        outcome.selected.set(best_c);
        ledger.order.push_back(best_c);
    }

    if (complete && outcome.selected.count() < k) {
        std::vector<std::size_t> rest;
        for (std::size_t c = 0; c < m; ++c)
            if (price[c] && !outcome.selected.test(c))
                rest.push_back(c);
        std::sort(rest.begin(), rest.end(), [&](std::size_t x, std::size_t y) {
            const long net_x = static_cast<long>(approver_count(e, x)) -
                               static_cast<long>(opponent_count(e, x));
            const long net_y = static_cast<long>(approver_count(e, y)) -
                               static_cast<long>(opponent_count(e, y));
            if (net_x != net_y)
                return net_x > net_y;
            return x < y;
        });
        for (std::size_t c : rest) {
            if (outcome.selected.count() >= k)
                break;
            outcome.selected.set(c);
            ledger.order.push_back(c);
        }
    }

    ledger.residual = budget;
    return {outcome, ledger};
}

/// Phragmén over the opposition-priced pool: budgets accrue continuously at
/// unit rate, but each voter's lifetime income is capped at k/n unless
/// `uncapped`. A candidate is bought the first moment its supporters' pooled
/// budgets reach its price; purchasers reset to zero.
inline std::pair<ExtendedOutcome, PaymentLedger> tax_phragmen(const Election& e,
                                                              bool uncapped = false) {
    const std::size_t m = e.num_candidates();
    const std::size_t n = e.num_voters();
    const std::size_t k = static_cast<std::size_t>(e.k);
    const Rational cap(BigInt(e.k), BigInt(n));

    std::vector<std::optional<Rational>> price(m);
    std::vector<Bitset> supporters(m, Bitset(n));
    for (std::size_t c = 0; c < m; ++c) {
        price[c] = opposition_price(e, c);
        supporters[c] = tally(e, c).first;
    }

    std::vector<Rational> budget(n, Rational(0));  // unspent
    std::vector<Rational> income(n, Rational(0));  // lifetime accrual
    Rational now(0);
    PaymentLedger ledger;
    ledger.payments.assign(n, {});
    ExtendedOutcome outcome = ExtendedOutcome::empty(e);

    while (outcome.selected.count() < k) {
        // Earliest extra time after `now` at which the group covers `price`,
        // walking the piecewise-linear pooled income over cap breakpoints.
        auto reach_delta = [&](const Bitset& group, const Rational& p) -> std::optional<Rational> {
            Rational pooled(0);
            std::vector<Rational> headroom; // time until each member stops earning
            for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i)) {
                pooled += budget[i];
                if (!uncapped)
                    headroom.push_back(cap - income[i]);
            }
            if (pooled >= p)
                return Rational(0);
            std::size_t active = group.count();
            if (uncapped)
                return (p - pooled) / Rational(BigInt(active));
            std::sort(headroom.begin(), headroom.end());
            Rational prev(0);
            for (const Rational& h : headroom) {
                const Rational segment = Rational(BigInt(active)) * (h - prev);
                if (pooled + segment >= p)
                    return prev + (p - pooled) / Rational(BigInt(active));
                pooled += segment;
                prev = h;
                --active;
            }
            return std::nullopt; // every member capped out short of the price
        };

        std::optional<Rational> best_delta;
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (!price[c] || outcome.selected.test(c))
                continue;
            auto delta = reach_delta(supporters[c], *price[c]);
            if (delta && (!best_delta || *delta < *best_delta)) {
                best_delta = *delta;
                best_c = c;
            }
        }
        if (!best_delta)
            break;

        now += *best_delta;
        for (std::size_t i = 0; i < n; ++i) {
            Rational gain = *best_delta;
            if (!uncapped)
                gain = std::min(gain, Rational(cap - income[i]));
            income[i] += gain;
            budget[i] += gain;
        }
        for (auto i = supporters[best_c].find_first(); i != Bitset::npos;
             i = supporters[best_c].find_next(i)) {
            if (budget[i] > 0)
                ledger.payments[i][best_c] = budget[i];
            budget[i] = 0;
        }
        outcome.selected.set(best_c);
        ledger.order.push_back(best_c);
    }

    // Capped runs are allowances of k/n; uncapped runs allocated `now` to
    // every voter, so the ledger invariants hold in both modes.
    ledger.initial_budget = uncapped ? now : cap;
    ledger.residual.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rational spent(0);
        for (const auto& [c, amount] : ledger.payments[i])
            spent += amount;
        ledger.residual[i] = ledger.initial_budget - spent;
    }
    return {outcome, ledger};
}

} // namespace updown
