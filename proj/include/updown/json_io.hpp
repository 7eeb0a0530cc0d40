#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "updown/axioms.hpp"
#include "updown/compare.hpp"
#include "updown/election.hpp"
#include "updown/outcome.hpp"
#include "updown/rational.hpp"
#include "updown/tax_rules.hpp"
#include "updown/thiele.hpp"

namespace updown {

using nlohmann::json;

// Rationals cross the wire as "num/den" strings (integers without the /1) so
// nothing is ever rounded. Keys are emitted in sorted order, which makes
// equal inputs produce byte-identical files.

inline json rational_to_json(const Rational& q) {
    if (denominator(q) == 1 && fits_long(numerator(q)))
        return json(static_cast<long>(numerator(q)));
    return json(to_fraction_string(q));
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer())
        return Rational(BigInt(j.get<long long>()));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw ParseError("ParseError: expected a rational as integer or \"num/den\" string");
}

// -- election ---------------------------------------------------------------

inline json election_to_json(const Election& e) {
    json voters = json::array();
    for (std::size_t i = 0; i < e.num_voters(); ++i) {
        json approve = json::array(), disapprove = json::array();
        for (auto c : indices_of(e.ballots[i].approve))
            approve.push_back(e.candidate_ids[c]);
        for (auto c : indices_of(e.ballots[i].disapprove))
            disapprove.push_back(e.candidate_ids[c]);
        voters.push_back({{"id", e.voter_ids[i]},
                          {"approve", std::move(approve)},
                          {"disapprove", std::move(disapprove)}});
    }
    return json{{"k", e.k}, {"candidates", e.candidate_ids}, {"voters", std::move(voters)}};
}

inline Election election_from_json(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("candidates") || !j.contains("voters"))
        throw ParseError("ParseError: election needs keys \"k\", \"candidates\", \"voters\"");
    if (!j["k"].is_number_integer())
        throw ParseError("ParseError: field \"k\" must be an integer");
    if (!j["candidates"].is_array() || !j["voters"].is_array())
        throw ParseError("ParseError: \"candidates\" and \"voters\" must be arrays");
    std::vector<std::string> candidates;
    for (const auto& c : j["candidates"]) {
        if (!c.is_string())
            throw ParseError("ParseError: candidate identifiers must be strings");
        candidates.push_back(c.get<std::string>());
    }
    std::vector<RawBallot> ballots;
    for (const auto& v : j["voters"]) {
        if (!v.is_object() || !v.contains("id"))
            throw ParseError("ParseError: each voter needs an \"id\" field");
        RawBallot rb;
        rb.voter_id = v["id"].get<std::string>();
        for (const char* key : {"approve", "disapprove"}) {
            if (!v.contains(key))
                continue;
            if (!v[key].is_array())
                throw ParseError(std::string("ParseError: voter field \"") + key +
                                 "\" must be an array");
            for (const auto& c : v[key]) {
                auto& target = std::string(key) == "approve" ? rb.approve : rb.disapprove;
                target.push_back(c.get<std::string>());
            }
        }
        ballots.push_back(std::move(rb));
    }
    return validate_election(candidates, j["k"].get<int>(), ballots);
}

// -- outcome ----------------------------------------------------------------

inline json outcome_to_json(const Election& e, const ExtendedOutcome& o,
                            const PaymentLedger* ledger = nullptr) {
    json selected = json::array(), vetoed = json::array();
    for (auto c : indices_of(o.selected))
        selected.push_back(e.candidate_ids[c]);
    for (auto c : indices_of(o.vetoed))
        vetoed.push_back(e.candidate_ids[c]);
    json out{{"selected", std::move(selected)}, {"vetoed", std::move(vetoed)}};
    if (ledger) {
        json payments = json::object(), residual = json::object();
        for (std::size_t i = 0; i < e.num_voters(); ++i) {
            if (!ledger->payments[i].empty()) {
                json per_voter = json::object();
                for (const auto& [c, amount] : ledger->payments[i])
                    per_voter[e.candidate_ids[c]] = to_fraction_string(amount);
                payments[e.voter_ids[i]] = std::move(per_voter);
            }
            residual[e.voter_ids[i]] = to_fraction_string(ledger->residual[i]);
        }
        out["payments"] = std::move(payments);
        out["residual"] = std::move(residual);
        out["initial_budget"] = to_fraction_string(ledger->initial_budget);
        json order = json::array();
        for (auto c : ledger->order)
            order.push_back(e.candidate_ids[c]);
        out["order"] = std::move(order);
    }
    return out;
}

struct OutcomeDoc {
    ExtendedOutcome outcome;
    std::optional<PaymentLedger> ledger;
};

inline std::size_t resolve_candidate(const Election& e, const std::string& id) {
    for (std::size_t c = 0; c < e.num_candidates(); ++c)
        if (e.candidate_ids[c] == id)
            return c;
    throw ParseError("ParseError: unknown candidate \"" + id + "\"");
}

inline std::size_t resolve_voter(const Election& e, const std::string& id) {
    for (std::size_t i = 0; i < e.num_voters(); ++i)
        if (e.voter_ids[i] == id)
            return i;
    throw ParseError("ParseError: unknown voter \"" + id + "\"");
}

inline OutcomeDoc outcome_from_json(const Election& e, const json& j) {
    if (!j.is_object() || !j.contains("selected"))
        throw ParseError("ParseError: outcome needs key \"selected\"");
    OutcomeDoc doc;
    doc.outcome = ExtendedOutcome::empty(e);
    for (const auto& c : j["selected"])
        doc.outcome.selected.set(resolve_candidate(e, c.get<std::string>()));
    if (j.contains("vetoed"))
        for (const auto& c : j["vetoed"])
            doc.outcome.vetoed.set(resolve_candidate(e, c.get<std::string>()));
    if (j.contains("payments") || j.contains("residual")) {
        PaymentLedger ledger;
        ledger.payments.assign(e.num_voters(), {});
        ledger.residual.assign(e.num_voters(), Rational(0));
        if (j.contains("initial_budget"))
            ledger.initial_budget = rational_from_json(j["initial_budget"]);
        if (j.contains("payments"))
            for (const auto& [voter, per_voter] : j["payments"].items())
                for (const auto& [cand, amount] : per_voter.items())
                    ledger.payments[resolve_voter(e, voter)][resolve_candidate(e, cand)] =
                        rational_from_json(amount);
        if (j.contains("residual"))
            for (const auto& [voter, amount] : j["residual"].items())
                ledger.residual[resolve_voter(e, voter)] = rational_from_json(amount);
        if (j.contains("order"))
            for (const auto& c : j["order"])
                ledger.order.push_back(resolve_candidate(e, c.get<std::string>()));
        doc.ledger = std::move(ledger);
    }
    return doc;
}

// -- audit report -----------------------------------------------------------

inline json report_to_json(const Election& e, const AuditReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
        json group = json::array();
        for (auto i : indices_of(w.group))
            group.push_back(e.voter_ids[i]);
        json jw{{"group", std::move(group)},
                {"required", rational_to_json(w.required)},
                {"achieved", rational_to_json(w.achieved)}};
        if (w.candidate_set) {
            json cs = json::array();
            for (auto c : indices_of(*w.candidate_set))
                cs.push_back(e.candidate_ids[c]);
            jw["candidate_set"] = std::move(cs);
        }
        if (w.achieved_raw)
            jw["achieved_raw"] = rational_to_json(*w.achieved_raw);
        witnesses.push_back(std::move(jw));
    }
    return json{{"axiom", axiom_name(r.axiom)},
                {"verdict", r.pass ? "pass" : "fail"},
                {"guard", r.guard},
                {"sweep", r.sweep},
                {"audited", outcome_to_json(e, r.audited)},
                {"witnesses", std::move(witnesses)}};
}

inline Axiom axiom_from_name(const std::string& name) {
    for (Axiom a : {Axiom::base_ejr, Axiom::base_pjr, Axiom::phragmen_avg, Axiom::pav_avg,
                    Axiom::ejpr, Axiom::pjpr, Axiom::group_veto, Axiom::weak_group_veto})
        if (name == axiom_name(a))
            return a;
    throw ParseError("ParseError: unknown axiom \"" + name + "\"");
}

inline AuditReport report_from_json(const Election& e, const json& j) {
    AuditReport r;
    r.axiom = axiom_from_name(j.at("axiom").get<std::string>());
    r.pass = j.at("verdict").get<std::string>() == "pass";
    r.guard = j.at("guard").get<std::size_t>();
    r.sweep = j.at("sweep").get<std::string>();
    r.audited = outcome_from_json(e, j.at("audited")).outcome;
    for (const auto& jw : j.at("witnesses")) {
        Witness w;
        w.group = Bitset(e.num_voters());
        for (const auto& v : jw.at("group"))
            w.group.set(resolve_voter(e, v.get<std::string>()));
        w.required = rational_from_json(jw.at("required"));
        w.achieved = rational_from_json(jw.at("achieved"));
        if (jw.contains("candidate_set")) {
            Bitset cs(e.num_candidates());
            for (const auto& c : jw["candidate_set"])
                cs.set(resolve_candidate(e, c.get<std::string>()));
            w.candidate_set = std::move(cs);
        }
        if (jw.contains("achieved_raw"))
            w.achieved_raw = rational_from_json(jw["achieved_raw"]);
        r.witnesses.push_back(std::move(w));
    }
    return r;
}

// -- Thiele scoring ----------------------------------------------------------

inline json scoring_to_json(const ThieleScoring& f) {
    json rows = json::array();
    for (const auto& row : f.table) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(to_fraction_string(v));
        rows.push_back(std::move(r));
    }
    return json{{"k", f.bound()}, {"f", std::move(rows)}};
}

inline ThieleScoring scoring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("f"))
        throw ParseError("ParseError: scoring needs keys \"k\" and \"f\"");
    const std::size_t k = j["k"].get<std::size_t>();
    ThieleScoring f;
    for (const auto& row : j["f"]) {
        std::vector<Rational> r;
        for (const auto& v : row)
            r.push_back(rational_from_json(v));
        f.table.push_back(std::move(r));
    }
    if (f.table.size() != k + 1)
        throw ParseError("ParseError: scoring table must have k+1 rows");
    for (const auto& row : f.table)
        if (row.size() != k + 1)
            throw ParseError("ParseError: scoring table rows must have k+1 entries");
    f.validate();
    return f;
}

// -- compare summary ----------------------------------------------------------

inline json compare_summary_to_json(const CompareSummary& s) {
    json rules = json::object();
    for (const auto& rule : s.rules) {
        const RuleSummary& rs = s.per_rule.at(rule);
        json axioms = json::object();
        for (const auto& [axiom, counts] : rs.axioms)
            axioms[axiom_name(axiom)] = {{"pass", counts.pass},
                                         {"fail", counts.fail},
                                         {"error", counts.error},
                                         {"not_applicable", counts.not_applicable}};
        rules[rule] = {{"axioms", std::move(axioms)},
                       {"mean_selected", to_fraction_string(rs.mean_selected())}};
    }
    json disagreements = json::object();
    for (const auto& [pair, count] : s.disagreements)
        disagreements[pair] = count;
    return json{{"trials", s.trials},
                {"seed", s.base.seed},
                {"gen", {{"n", s.base.n},
                         {"m", s.base.m},
                         {"k", s.base.k},
                         {"p_approve", to_fraction_string(s.base.p_approve)},
                         {"p_disapprove", to_fraction_string(s.base.p_disapprove)}}},
                {"rules", std::move(rules)},
                {"disagreements", std::move(disagreements)}};
}

// -- files -------------------------------------------------------------------

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("ParseError: cannot open \"" + path + "\"");
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("ParseError: " + path + ": " + ex.what());
    }
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("ParseError: cannot write \"" + path + "\"");
    out << j.dump(2) << "\n";
}

inline Election read_election(const std::string& path) {
    return election_from_json(load_json(path));
}

inline void write_election(const Election& e, const std::string& path) {
    save_json(path, election_to_json(e));
}

} // namespace updown
