#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "updown/axioms.hpp"
#include "updown/generator.hpp"
#include "updown/pav.hpp"
#include "updown/phragmen.hpp"
#include "updown/tax_rules.hpp"
#include "updown/thiele.hpp"

namespace updown {

inline const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names = {
        "phragmen-sym", "pav-exact", "pav-local", "tax-mes", "tax-phragmen", "thiele"};
    return names;
}

struct RuleOptions {
    std::optional<ThieleScoring> scoring; // thiele only; default H(z) per election
    bool complete = false;                // tax-mes completion
    bool uncapped = false;                // tax-phragmen without the k/n cap
    PhragmenTieOrder tie_order = PhragmenTieOrder::positive_first;
    std::size_t enumeration_guard = 20;   // pav-exact / thiele sweep bound
};

struct RuleResult {
    ExtendedOutcome outcome;
    std::optional<PaymentLedger> ledger;
};

inline RuleResult run_rule(const Election& e, const std::string& rule,
                           const RuleOptions& opt = {}) {
    if (rule == "phragmen-sym") {
        auto [outcome, trace] = phragmen_updown(e, opt.tie_order);
        return {outcome, std::nullopt};
    }
    if (rule == "pav-exact")
        return {pav_exact(e, opt.enumeration_guard), std::nullopt};
    if (rule == "pav-local")
        return {pav_local_search(e), std::nullopt};
    if (rule == "tax-mes") {
        auto [outcome, ledger] = tax_mes(e, opt.complete);
        return {outcome, std::move(ledger)};
    }
    if (rule == "tax-phragmen") {
        auto [outcome, ledger] = tax_phragmen(e, opt.uncapped);
        return {outcome, std::move(ledger)};
    }
    if (rule == "thiele") {
        if (opt.scoring) {
            opt.scoring->validate();
            return {thiele_optimize(e, *opt.scoring, opt.enumeration_guard), std::nullopt};
        }
        return {thiele_optimize(e, ThieleScoring::pav(static_cast<std::size_t>(e.k)),
                                opt.enumeration_guard),
                std::nullopt};
    }
    throw ValidationError("BadParams: unknown rule \"" + rule + "\"");
}

/// Which axioms a rule's outcomes are judged against: the symmetric rules get
/// the base axioms plus their own average bound; the asymmetric ones get the
/// positive-representation and veto axioms.
inline std::vector<Axiom> applicable_axioms(const std::string& rule) {
    if (rule == "phragmen-sym")
        return {Axiom::base_ejr, Axiom::base_pjr, Axiom::phragmen_avg};
    if (rule == "pav-exact" || rule == "pav-local")
        return {Axiom::base_ejr, Axiom::base_pjr, Axiom::pav_avg};
    return {Axiom::ejpr, Axiom::pjpr, Axiom::group_veto, Axiom::weak_group_veto};
}

inline AuditReport run_audit(const Election& e, const ExtendedOutcome& o, Axiom axiom,
                             std::size_t guard) {
    switch (axiom) {
    case Axiom::base_ejr: return audit_base_ejr(e, o, guard);
    case Axiom::base_pjr: return audit_base_pjr(e, o, guard);
    case Axiom::phragmen_avg: return audit_avgsat_bound(e, o, AvgBoundKind::phragmen, guard);
    case Axiom::pav_avg: return audit_avgsat_bound(e, o, AvgBoundKind::pav, guard);
    case Axiom::ejpr: return audit_ejpr(e, o, guard);
    case Axiom::pjpr: return audit_pjpr(e, o, guard);
    case Axiom::group_veto: return audit_group_veto(e, o, guard);
    default: return audit_weak_group_veto(e, o, guard);
    }
}

struct AxiomCounts {
    long pass = 0;
    long fail = 0;
    long error = 0;          // guard exceeded or rule precondition failed
    long not_applicable = 0; // weak veto without a pivot
};

struct RuleSummary {
    std::map<Axiom, AxiomCounts> axioms;
    BigInt selected_total = 0;
    long trials = 0;

    Rational mean_selected() const {
        return trials == 0 ? Rational(0) : Rational(selected_total, BigInt(trials));
    }
};

struct CompareSummary {
    long trials = 0;
    GenParams base;
    std::vector<std::string> rules;
    std::map<std::string, RuleSummary> per_rule;
    std::map<std::string, long> disagreements; // "ruleA|ruleB" -> differing trials
};

/// Runs `trials` generated elections through every rule and every applicable
/// auditor. Per-trial errors are counted, not fatal. Deterministic: trial
/// seeds come from one mt19937_64 stream seeded with base.seed.
inline CompareSummary compare_batch(const std::vector<std::string>& rules, long trials,
                                    const GenParams& base, std::size_t audit_guard = 16,
                                    const RuleOptions& opt = {}) {
    for (const auto& r : rules)
        if (std::find(rule_names().begin(), rule_names().end(), r) == rule_names().end())
            throw ValidationError("BadParams: unknown rule \"" + r + "\"");

    CompareSummary summary;
    summary.trials = trials;
    summary.base = base;
    summary.rules = rules;
    for (const auto& r : rules)
        summary.per_rule[r].trials = trials;

    std::mt19937_64 seeder(base.seed);
    for (long trial = 0; trial < trials; ++trial) {
        GenParams p = base;
        p.seed = seeder();
        const Election e = gen_random(p);

        std::map<std::string, ExtendedOutcome> outcomes;
        for (const auto& rule : rules) {
            RuleSummary& rs = summary.per_rule[rule];
            ExtendedOutcome outcome = ExtendedOutcome::empty(e);
            try {
                outcome = run_rule(e, rule, opt).outcome;
            } catch (const Error&) {
                for (Axiom a : applicable_axioms(rule))
                    ++rs.axioms[a].error;
                continue;
            }
            outcomes.emplace(rule, outcome);
            rs.selected_total += outcome.selected.count();
            for (Axiom a : applicable_axioms(rule)) {
                try {
                    const AuditReport report = run_audit(e, outcome, a, audit_guard);
                    ++(report.pass ? rs.axioms[a].pass : rs.axioms[a].fail);
                } catch (const NotApplicable&) {
                    ++rs.axioms[a].not_applicable;
                } catch (const Error&) {
                    ++rs.axioms[a].error;
                }
            }
        }
        for (std::size_t i = 0; i < rules.size(); ++i)
            for (std::size_t j = i + 1; j < rules.size(); ++j) {
                auto a = outcomes.find(rules[i]);
                auto b = outcomes.find(rules[j]);
                if (a != outcomes.end() && b != outcomes.end() &&
                    a->second.selected != b->second.selected)
                    ++summary.disagreements[rules[i] + "|" + rules[j]];
            }
    }
    return summary;
}

/// Aligned text table: one row per (rule, axiom) with pass/fail/error/n-a
/// counts, then mean committee sizes and the disagreement matrix.
inline std::string render_compare_table(const CompareSummary& s) {
    std::ostringstream out;
    out << "trials: " << s.trials << "\n";
    out << std::left << std::setw(14) << "rule" << std::setw(17) << "axiom" << std::right
        << std::setw(7) << "pass" << std::setw(7) << "fail" << std::setw(7) << "error"
        << std::setw(7) << "n/a" << "\n";
    for (const auto& rule : s.rules) {
        const RuleSummary& rs = s.per_rule.at(rule);
        for (const auto& [axiom, counts] : rs.axioms)
            out << std::left << std::setw(14) << rule << std::setw(17) << axiom_name(axiom)
                << std::right << std::setw(7) << counts.pass << std::setw(7) << counts.fail
                << std::setw(7) << counts.error << std::setw(7) << counts.not_applicable
                << "\n";
    }
    out << "\nmean committee size\n";
    for (const auto& rule : s.rules)
        out << std::left << std::setw(14) << rule << "  "
            << to_fraction_string(s.per_rule.at(rule).mean_selected()) << "\n";
    if (!s.disagreements.empty()) {
        out << "\ndisagreements (selected sets differ)\n";
        for (const auto& [pair, count] : s.disagreements)
            out << std::left << std::setw(28) << pair << std::right << std::setw(7) << count
                << "\n";
    }
    return out.str();
}

} // namespace updown
