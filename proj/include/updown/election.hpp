#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "updown/errors.hpp"
#include "updown/sets.hpp"

namespace updown {

/// One voter's ballot: approved and disapproved candidate index sets.
/// The two sets are disjoint; unlisted candidates are neutral.
struct Ballot {
    Bitset approve;
    Bitset disapprove;

    bool operator==(const Ballot& other) const = default;
};

/// A committee election: candidates, voters, committee bound k and ballots.
/// Immutable after validation; all operations on it are pure.
struct Election {
    std::vector<std::string> candidate_ids;
    std::vector<std::string> voter_ids;
    int k = 0;
    std::vector<Ballot> ballots; // one per voter, indices aligned with voter_ids

    std::size_t num_candidates() const { return candidate_ids.size(); }
    std::size_t num_voters() const { return voter_ids.size(); }

    bool operator==(const Election& other) const = default;
};

/// Raw ballot named by identifiers, as read from files.
struct RawBallot {
    std::string voter_id;
    std::vector<std::string> approve;
    std::vector<std::string> disapprove;
};

/// Checks identifiers, k range and ballot disjointness; resolves identifiers
/// to indices. Throws ValidationError naming the violated rule.
inline Election validate_election(const std::vector<std::string>& candidate_ids,
                                  int k,
                                  const std::vector<RawBallot>& raw_ballots) {
    Election e;
    e.candidate_ids = candidate_ids;
    e.k = k;

    const std::size_t m = candidate_ids.size();
    if (m == 0)
        throw ValidationError("KOutOfRange: election has no candidates");
    if (k < 1 || static_cast<std::size_t>(k) > m)
        throw ValidationError("KOutOfRange: k = " + std::to_string(k) +
                              " not in 1.." + std::to_string(m));
    if (raw_ballots.empty())
        throw ValidationError("EmptyElectorate: election has no voters");

    std::unordered_map<std::string, std::size_t> cand_index;
    for (std::size_t i = 0; i < m; ++i) {
        if (!cand_index.emplace(candidate_ids[i], i).second)
            throw ValidationError("DuplicateIdentifier: candidate \"" + candidate_ids[i] + "\"");
    }
    std::unordered_map<std::string, std::size_t> voter_index;
    for (const auto& rb : raw_ballots) {
        if (!voter_index.emplace(rb.voter_id, voter_index.size()).second)
            throw ValidationError("DuplicateIdentifier: voter \"" + rb.voter_id + "\"");
    }

    auto resolve = [&](const std::vector<std::string>& ids, const std::string& voter) {
        Bitset b(m);
        for (const auto& id : ids) {
            auto it = cand_index.find(id);
            if (it == cand_index.end())
                throw ValidationError("UnknownCandidateInBallot: \"" + id +
                                      "\" on ballot of \"" + voter + "\"");
            b.set(it->second);
        }
        return b;
    };

    for (const auto& rb : raw_ballots) {
        Ballot b;
        b.approve = resolve(rb.approve, rb.voter_id);
        b.disapprove = resolve(rb.disapprove, rb.voter_id);
        if ((b.approve & b.disapprove).any())
            throw ValidationError("BallotOverlap: voter \"" + rb.voter_id +
                                  "\" both approves and disapproves a candidate");
        e.voter_ids.push_back(rb.voter_id);
        e.ballots.push_back(std::move(b));
    }
    return e;
}

/// Supporters and opponents of candidate c: (A_c, D_c) as voter sets.
inline std::pair<Bitset, Bitset> tally(const Election& e, std::size_t c) {
    const std::size_t n = e.num_voters();
    Bitset supporters(n), opponents(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (e.ballots[i].approve.test(c))
            supporters.set(i);
        if (e.ballots[i].disapprove.test(c))
            opponents.set(i);
    }
    return {supporters, opponents};
}

inline std::size_t approver_count(const Election& e, std::size_t c) {
    std::size_t cnt = 0;
    for (const auto& b : e.ballots)
        if (b.approve.test(c))
            ++cnt;
    return cnt;
}

inline std::size_t opponent_count(const Election& e, std::size_t c) {
    std::size_t cnt = 0;
    for (const auto& b : e.ballots)
        if (b.disapprove.test(c))
            ++cnt;
    return cnt;
}

/// Candidates approved by every voter in S and disapproved by every voter
/// in S: (A_S, D_S). S must be nonempty.
inline std::pair<Bitset, Bitset> common_sets(const Election& e, const Bitset& group) {
    if (group.none())
        throw EmptyGroup("EmptyGroup: common_sets of an empty voter set");
    Bitset common_approve(e.num_candidates());
    Bitset common_disapprove(e.num_candidates());
    common_approve.set();
    common_disapprove.set();
    for (auto i = group.find_first(); i != Bitset::npos; i = group.find_next(i)) {
        common_approve &= e.ballots[i].approve;
        common_disapprove &= e.ballots[i].disapprove;
    }
    return {common_approve, common_disapprove};
}

/// ap(T): voters approving at least one candidate from T.
inline Bitset approvers_of_set(const Election& e, const Bitset& candidates) {
    Bitset out(e.num_voters());
    for (std::size_t i = 0; i < e.num_voters(); ++i)
        if ((e.ballots[i].approve & candidates).any())
            out.set(i);
    return out;
}

} // namespace updown
