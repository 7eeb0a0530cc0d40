#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "updown/claims.hpp"
#include "updown/compare.hpp"
#include "updown/fixtures.hpp"
#include "updown/json_io.hpp"

namespace updown {

// Exit codes: 0 success / all audits pass, 1 axiom violation found,
// 2 usage or input error.
namespace cli_exit {
inline constexpr int ok = 0;
inline constexpr int violation = 1;
inline constexpr int usage = 2;
} // namespace cli_exit

namespace detail {

inline void emit(const json& j, const std::string& out_path, std::ostream& os) {
    if (out_path.empty())
        os << j.dump(2) << "\n";
    else
        save_json(out_path, j);
}

/// Group tokens are voter identifiers; bare integers fall back to 1-based
/// voter positions.
inline Bitset parse_group(const Election& e, const std::string& spec) {
    Bitset group(e.num_voters());
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto begin = token.find_first_not_of(" \t");
        const auto end = token.find_last_not_of(" \t");
        if (begin == std::string::npos)
            continue;
        token = token.substr(begin, end - begin + 1);
        bool matched = false;
        for (std::size_t i = 0; i < e.num_voters(); ++i)
            if (e.voter_ids[i] == token) {
                group.set(i);
                matched = true;
                break;
            }
        if (matched)
            continue;
        try {
            const std::size_t pos = std::stoul(token);
            if (pos < 1 || pos > e.num_voters())
                throw ValidationError("BadParams: voter position " + token + " out of range");
            group.set(pos - 1);
        } catch (const std::invalid_argument&) {
            throw ValidationError("BadParams: unknown voter \"" + token + "\"");
        } catch (const std::out_of_range&) {
            throw ValidationError("BadParams: unknown voter \"" + token + "\"");
        }
    }
    if (group.none())
        throw ValidationError("BadParams: empty voter group");
    return group;
}

inline Election fixture_by_name(const std::string& name) {
    if (name == "intro")
        return fixtures::intro();
    if (name == "fix-a")
        return fixtures::fix_a();
    if (name == "fix-b")
        return fixtures::fix_b();
    throw ValidationError("BadParams: unknown example \"" + name + "\"");
}

} // namespace detail

/// Entry point shared by the binary and the tests. Streams default to the
/// process streams; tests inject their own.
inline int cli_main(const std::vector<std::string>& args, std::ostream& os = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"proportional committee elections with approval and disapproval ballots"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a rule on an election file");
    std::string run_rule_name, run_input, run_out, run_scoring;
    bool run_complete = false, run_uncapped = false, run_negative_first = false;
    std::size_t run_guard = 20;
    run->add_option("--rule", run_rule_name, "one of: phragmen-sym pav-exact pav-local tax-mes tax-phragmen thiele")
        ->required();
    run->add_option("--input", run_input, "election JSON file")->required();
    run->add_option("--out", run_out, "write the outcome JSON here (default: stdout)");
    run->add_option("--scoring", run_scoring, "Thiele scoring table JSON file");
    run->add_flag("--complete", run_complete, "tax-mes: fill the committee greedily by net approval");
    run->add_flag("--uncapped", run_uncapped, "tax-phragmen: drop the k/n income cap");
    run->add_flag("--negative-first", run_negative_first,
                  "phragmen-sym: prefer the negative item at purchase-time ties");
    run->add_option("--guard", run_guard, "enumeration bound for pav-exact / thiele (default 20)");

    // audit
    auto* audit = app.add_subcommand("audit", "audit an outcome against an axiom");
    std::string audit_axiom, audit_input, audit_outcome, audit_out;
    std::size_t audit_guard = 16;
    audit->add_option("--axiom", audit_axiom,
                      "base-ejr base-pjr phragmen-avg pav-avg ejpr pjpr group-veto weak-group-veto all")
        ->required();
    audit->add_option("--input", audit_input, "election JSON file")->required();
    audit->add_option("--outcome", audit_outcome, "outcome JSON file")->required();
    audit->add_option("--guard", audit_guard, "subset sweep bound (default 16)");
    audit->add_option("--out", audit_out, "write the report JSON here (default: stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
    std::string oracle_what, oracle_input, oracle_group;
    std::size_t oracle_guard = 12;
    oracle->add_option("--what", oracle_what, "claim | pav")->required();
    oracle->add_option("--input", oracle_input, "election JSON file")->required();
    oracle->add_option("--group", oracle_group, "voter group, e.g. \"1,2,5\" or \"v1,v2\"");
    oracle->add_option("--guard", oracle_guard, "claim oracle enumeration bound (default 12)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random election");
    GenParams gen_params;
    std::string gen_pa = "1/3", gen_pd = "1/3", gen_out;
    gen->add_option("--n", gen_params.n, "voters")->required();
    gen->add_option("--m", gen_params.m, "candidates")->required();
    gen->add_option("--k", gen_params.k, "committee bound")->required();
    gen->add_option("--pa", gen_pa, "approval probability (default 1/3)");
    gen->add_option("--pd", gen_pd, "disapproval probability (default 1/3)");
    gen->add_option("--seed", gen_params.seed, "64-bit seed")->required();
    gen->add_option("--out", gen_out, "write the election JSON here (default: stdout)");

    // example
    auto* example = app.add_subcommand("example", "emit a canonical fixture");
    std::string example_name, example_out;
    example->add_option("name", example_name, "intro | fix-a | fix-b")->required();
    example->add_option("--out", example_out, "write the election JSON here (default: stdout)");

    // compare
    auto* compare = app.add_subcommand("compare", "batch-run rules and audits on random elections");
    std::string cmp_rules = "phragmen-sym,pav-exact,tax-mes,tax-phragmen";
    long cmp_trials = 20;
    GenParams cmp_params{4, 4, 2, Rational(1, 3), Rational(1, 3), 0};
    std::string cmp_pa = "1/3", cmp_pd = "1/3", cmp_json;
    std::size_t cmp_guard = 16;
    compare->add_option("--rules", cmp_rules, "comma-separated rule list");
    compare->add_option("--trials", cmp_trials, "number of generated elections");
    compare->add_option("--seed", cmp_params.seed, "master seed")->required();
    compare->add_option("--n", cmp_params.n, "voters per trial");
    compare->add_option("--m", cmp_params.m, "candidates per trial");
    compare->add_option("--k", cmp_params.k, "committee bound per trial");
    compare->add_option("--pa", cmp_pa, "approval probability");
    compare->add_option("--pd", cmp_pd, "disapproval probability");
    compare->add_option("--guard", cmp_guard, "audit sweep bound (default 16)");
    compare->add_option("--json", cmp_json, "also write the summary JSON here");

    std::vector<std::string> reversed(args.rbegin(), args.rend()); // CLI11 wants a reversed stack
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, os, err);
        return code == 0 ? cli_exit::ok : cli_exit::usage;
    }

    try {
        if (*run) {
            const Election e = read_election(run_input);
            RuleOptions opt;
            opt.complete = run_complete;
            opt.uncapped = run_uncapped;
            opt.tie_order = run_negative_first ? PhragmenTieOrder::negative_first
                                               : PhragmenTieOrder::positive_first;
            opt.enumeration_guard = run_guard;
            if (!run_scoring.empty())
                opt.scoring = scoring_from_json(load_json(run_scoring));
            const RuleResult result = run_rule(e, run_rule_name, opt);
            detail::emit(outcome_to_json(e, result.outcome,
                                         result.ledger ? &*result.ledger : nullptr),
                         run_out, os);
            return cli_exit::ok;
        }

        if (*audit) {
            const Election e = read_election(audit_input);
            const OutcomeDoc doc = outcome_from_json(e, load_json(audit_outcome));
            std::vector<Axiom> axioms;
            if (audit_axiom == "all")
                axioms = {Axiom::base_ejr, Axiom::base_pjr, Axiom::phragmen_avg,
                          Axiom::pav_avg, Axiom::ejpr, Axiom::pjpr, Axiom::group_veto,
                          Axiom::weak_group_veto};
            else
                axioms = {axiom_from_name(audit_axiom)};
            json reports = json::array();
            bool any_fail = false;
            for (Axiom a : axioms) {
                try {
                    const AuditReport report = run_audit(e, doc.outcome, a, audit_guard);
                    any_fail = any_fail || !report.pass;
                    reports.push_back(report_to_json(e, report));
                } catch (const NotApplicable& ex) {
                    if (audit_axiom != "all")
                        os << ex.what() << "\n";
                    reports.push_back(json{{"axiom", axiom_name(a)},
                                           {"verdict", "not-applicable"},
                                           {"witnesses", json::array()}});
                }
            }
            detail::emit(reports.size() == 1 ? reports[0] : reports, audit_out, os);
            return any_fail ? cli_exit::violation : cli_exit::ok;
        }

        if (*oracle) {
            const Election e = read_election(oracle_input);
            if (oracle_what == "claim") {
                if (oracle_group.empty())
                    throw ValidationError("BadParams: oracle --what claim needs --group");
                const Bitset group = detail::parse_group(e, oracle_group);
                const GroupEntitlement ge = claim_formula(e, group);
                os << "group size " << group.count()
                   << ", |A_S| = " << ge.common_approved
                   << ", |D_S| = " << ge.common_disapproved << "\n";
                os << "formula value " << to_fraction_string(ge.formula_value) << " (case "
                   << ge.case_index << "), entitlement " << ge.entitlement << "\n";
                os << "upper bound " << to_fraction_string(claim_upper_bound(e, group)) << "\n";
                if (e.num_candidates() <= oracle_guard)
                    os << "oracle " << claim_oracle(e, group, oracle_guard) << "\n";
                else
                    os << "oracle skipped (m = " << e.num_candidates() << " exceeds guard "
                       << oracle_guard << ")\n";
                return cli_exit::ok;
            }
            if (oracle_what == "pav") {
                const ExtendedOutcome best = pav_exact(e, std::max<std::size_t>(oracle_guard, 20));
                os << "pav optimum score " << to_fraction_string(pav_score(e, best.selected))
                   << "\n";
                detail::emit(outcome_to_json(e, best), "", os);
                return cli_exit::ok;
            }
            throw ValidationError("BadParams: oracle --what must be claim or pav");
        }

        if (*gen) {
            gen_params.p_approve = parse_rational(gen_pa);
            gen_params.p_disapprove = parse_rational(gen_pd);
            const Election e = gen_random(gen_params);
            detail::emit(election_to_json(e), gen_out, os);
            return cli_exit::ok;
        }

        if (*example) {
            const Election e = detail::fixture_by_name(example_name);
            detail::emit(election_to_json(e), example_out, os);
            return cli_exit::ok;
        }

        if (*compare) {
            std::vector<std::string> rules;
            std::stringstream ss(cmp_rules);
            std::string token;
            while (std::getline(ss, token, ','))
                if (!token.empty())
                    rules.push_back(token);
            cmp_params.p_approve = parse_rational(cmp_pa);
            cmp_params.p_disapprove = parse_rational(cmp_pd);
            const CompareSummary summary = compare_batch(rules, cmp_trials, cmp_params, cmp_guard);
            os << render_compare_table(summary);
            if (!cmp_json.empty())
                save_json(cmp_json, compare_summary_to_json(summary));
            return cli_exit::ok;
        }
    } catch (const Error& ex) {
        err << ex.what() << "\n";
        return cli_exit::usage;
    }
    return cli_exit::usage;
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return cli_main(args);
}

} // namespace updown
