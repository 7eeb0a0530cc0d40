#pragma once

#include <string>
#include <vector>

#include "updown/election.hpp"

namespace updown::fixtures {

/// Two candidates, k = 1. v1 backs a, v2 vetoes a, v3 backs b.
inline Election fix_a() {
    return validate_election({"a", "b"}, 1,
                             {{"v1", {"a"}, {}},
                              {"v2", {}, {"a"}},
                              {"v3", {"b"}, {}}});
}

/// Three candidates, k = 2. a has two backers and one veto, b two backers.
inline Election fix_b() {
    return validate_election({"a", "b", "c"}, 2,
                             {{"v1", {"a"}, {}},
                              {"v2", {"a"}, {}},
                              {"v3", {"b"}, {"a"}},
                              {"v4", {"b"}, {}}});
}

/// 30 candidates in three blocks of ten, 12 voters, k = 10.
///   block 1 (c1..c10):  vetoed by voters 1-5, approved by voters 6-12
///   block 2 (c11..c20): approved by voters 6-11; consecutive veto pairs
///                       c11,c12:{1,5} c13,c14:{1,2} c15,c16:{2,3}
///                       c17,c18:{3,4} c19,c20:{4,5}
///   block 3 (c21..c30): approved by voters 1-5, vetoed by voter 12
inline Election intro() {
    const int m = 30, n = 12;
    std::vector<std::string> candidates;
    for (int c = 1; c <= m; ++c)
        candidates.push_back("c" + std::to_string(c));

    std::vector<std::vector<std::string>> approve(n + 1), disapprove(n + 1);
    auto block2_vetoers = [](int c) -> std::pair<int, int> {
        switch ((c - 11) / 2) {
        case 0: return {1, 5};
        case 1: return {1, 2};
        case 2: return {2, 3};
        case 3: return {3, 4};
        default: return {4, 5};
        }
    };
    for (int c = 1; c <= 10; ++c) {
        for (int v = 1; v <= 5; ++v)
            disapprove[v].push_back(candidates[c - 1]);
        for (int v = 6; v <= 12; ++v)
            approve[v].push_back(candidates[c - 1]);
    }
    for (int c = 11; c <= 20; ++c) {
        auto [x, y] = block2_vetoers(c);
        disapprove[x].push_back(candidates[c - 1]);
        disapprove[y].push_back(candidates[c - 1]);
        for (int v = 6; v <= 11; ++v)
            approve[v].push_back(candidates[c - 1]);
    }
    for (int c = 21; c <= 30; ++c) {
        for (int v = 1; v <= 5; ++v)
            approve[v].push_back(candidates[c - 1]);
        disapprove[12].push_back(candidates[c - 1]);
    }

    std::vector<RawBallot> ballots;
    for (int v = 1; v <= n; ++v)
        ballots.push_back({"v" + std::to_string(v), approve[v], disapprove[v]});
    return validate_election(candidates, 10, ballots);
}

// Named voter groups of the intro election (0-based indices).
inline Bitset intro_v1() { return bitset_from_mask(12, 0b000000011111); }
inline Bitset intro_v2a() { return bitset_from_mask(12, 0b011111100000); }
inline Bitset intro_v2b() { return bitset_from_mask(12, 0b111111100000); }

inline Bitset intro_block(int which) { // 1..3 -> c1..c10 / c11..c20 / c21..c30
    Bitset b(30);
    for (int c = (which - 1) * 10; c < which * 10; ++c)
        b.set(c);
    return b;
}

} // namespace updown::fixtures
