#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace updown;
namespace fx = updown::fixtures;

TEST_CASE("claim_formula on the running example") {
    const Election intro = fx::intro();

    const GroupEntitlement v1 = claim_formula(intro, fx::intro_v1());
    CHECK(v1.formula_value == Rational(100, 19));
    CHECK(v1.case_index == 2);
    CHECK(v1.entitlement == 5);

    const GroupEntitlement v2a = claim_formula(intro, fx::intro_v2a());
    CHECK(v2a.formula_value == Rational(5));
    CHECK(v2a.case_index == 3);
    CHECK(v2a.entitlement == 5);

    Bitset everyone(12);
    everyone.set();
    const GroupEntitlement all = claim_formula(intro, everyone);
    CHECK(all.case_index == 5);
    CHECK(all.formula_value == Rational(0));
    CHECK(all.entitlement == 0);

    CHECK_THROWS_AS(claim_formula(intro, Bitset(12)), EmptyGroup);
}

TEST_CASE("claim_int") {
    const Election intro = fx::intro();
    CHECK(claim_int(intro, fx::intro_v1()) == 5);
    CHECK(claim_int(intro, fx::intro_v2a()) == 5);

    const Election blank = validate_election({"a"}, 1, {{"v1", {}, {}}, {"v2", {"a"}, {}}});
    CHECK(claim_int(blank, bitset_of(2, {0})) == 0);
}

TEST_CASE("claim_upper_bound") {
    const Election intro = fx::intro();
    CHECK(claim_upper_bound(intro, fx::intro_v1()) == Rational(25, 3));

    Bitset everyone(12);
    everyone.set();
    CHECK(claim_upper_bound(intro, everyone) == Rational(0));

    const Election a = fx::fix_a();
    CHECK(claim_upper_bound(a, bitset_of(3, {1})) == Rational(1, 3));
}

TEST_CASE("max_extension_size") {
    const Election intro = fx::intro();
    SECTION("empty partial outcome gives |D_S| + min(|A_S|, k)") {
        CHECK(max_extension_size(intro, fx::intro_v1(), ExtendedOutcome::empty(intro)) == 20);
    }
    SECTION("first block occupied blocks the first group") {
        ExtendedOutcome t{fx::intro_block(1), Bitset(30)};
        CHECK(max_extension_size(intro, fx::intro_v1(), t) == 0);
    }
    SECTION("fix-a single vetoer against an elected candidate") {
        const Election a = fx::fix_a();
        ExtendedOutcome t{bitset_of(2, {0}), Bitset(2)};
        CHECK(max_extension_size(a, bitset_of(3, {1}), t) == 0);
    }
    SECTION("errors") {
        const Election a = fx::fix_a();
        CHECK_THROWS_AS(max_extension_size(a, Bitset(3), ExtendedOutcome::empty(a)), EmptyGroup);
        ExtendedOutcome bad{bitset_of(2, {0}), bitset_of(2, {0})};
        CHECK_THROWS_AS(max_extension_size(a, bitset_of(3, {0}), bad), ValidationError);
    }
}

TEST_CASE("max_extension_size of the empty partial outcome, on random elections") {
    std::mt19937_64 seeder(42);
    for (int trial = 0; trial < 40; ++trial) {
        const Election e = gen_random(support::trial_params(seeder, 6, 6));
        const std::uint64_t groups = std::uint64_t(1) << e.num_voters();
        for (std::uint64_t mask = 1; mask < groups; ++mask) {
            const Bitset group = bitset_from_mask(e.num_voters(), mask);
            auto [common_a, common_d] = common_sets(e, group);
            CHECK(max_extension_size(e, group, ExtendedOutcome::empty(e)) ==
                  common_d.count() +
                      std::min<std::size_t>(common_a.count(), static_cast<std::size_t>(e.k)));
        }
    }
}

TEST_CASE("claim_oracle on the small fixtures") {
    const Election a = fx::fix_a();
    CHECK(claim_oracle(a, bitset_of(3, {1})) == 0);

    const Election blank = validate_election({"a"}, 1, {{"v1", {}, {}}, {"v2", {"a"}, {}}});
    CHECK(claim_oracle(blank, bitset_of(2, {0})) == 0);

    const Election intro = fx::intro();
    CHECK_THROWS_AS(claim_oracle(intro, fx::intro_v1()), GuardExceeded);
}

TEST_CASE("oracle equivalence: claim_int equals the definition-level sweep") {
    std::mt19937_64 seeder(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Election e = gen_random(support::trial_params(seeder, 5, 5));
        const std::uint64_t groups = std::uint64_t(1) << e.num_voters();
        for (std::uint64_t mask = 1; mask < groups; ++mask) {
            const Bitset group = bitset_from_mask(e.num_voters(), mask);
            INFO("seed trail " << trial << " group mask " << mask);
            CHECK(claim_oracle(e, group) == claim_int(e, group));
        }
    }
}

TEST_CASE("claim bounds hold on random elections") {
    std::mt19937_64 seeder(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Election e = gen_random(support::trial_params(seeder, 6, 8));
        const std::uint64_t groups = std::uint64_t(1) << e.num_voters();
        for (std::uint64_t mask = 1; mask < groups; ++mask) {
            const Bitset group = bitset_from_mask(e.num_voters(), mask);
            const GroupEntitlement ge = claim_formula(e, group);
            auto [common_a, common_d] = common_sets(e, group);

            // 0 <= claim_int <= |D_S| + min(k, |A_S|)
            CHECK(ge.entitlement >= 0);
            CHECK(static_cast<std::size_t>(ge.entitlement) <=
                  common_d.count() +
                      std::min<std::size_t>(static_cast<std::size_t>(e.k), common_a.count()));

            // the simple cap, or the unconditional-guarantee escape: every
            // k-committee hands some member the claim
            const bool capped = ge.formula_value <= claim_upper_bound(e, group);
            if (!capped) {
                REQUIRE(e.num_candidates() <= 8);
                const std::uint64_t top = std::uint64_t(1) << e.num_candidates();
                bool every_committee_serves = true;
                for (std::uint64_t sel = 0; sel < top && every_committee_serves; ++sel) {
                    if (std::popcount(sel) != e.k)
                        continue;
                    ExtendedOutcome w = ExtendedOutcome::empty(e);
                    w.selected = bitset_from_mask(e.num_candidates(), sel);
                    w = maximal_completion(w, e);
                    bool someone = false;
                    for (auto i = group.find_first(); i != Bitset::npos && !someone;
                         i = group.find_next(i))
                        someone = Rational(BigInt(satisfaction(e, w, i))) >= ge.formula_value;
                    every_committee_serves = someone;
                }
                CHECK(every_committee_serves);
            }
        }
    }
}
