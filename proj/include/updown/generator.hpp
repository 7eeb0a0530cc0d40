#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "updown/election.hpp"
#include "updown/rational.hpp"

namespace updown {

/// Independent per-(voter, candidate) ballot sampling: approve with
/// probability p_approve, disapprove with p_disapprove, neutral otherwise.
struct GenParams {
    std::size_t n = 0;
    std::size_t m = 0;
    int k = 0;
    Rational p_approve;
    Rational p_disapprove;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1 || m < 1 || k < 1 || static_cast<std::size_t>(k) > m)
            throw ValidationError("BadParams: need n >= 1, m >= 1, 1 <= k <= m");
        if (p_approve < 0 || p_disapprove < 0 || p_approve + p_disapprove > 1)
            throw ValidationError("BadParams: probabilities must be nonnegative with sum <= 1");
    }
};

/// Deterministic for a fixed seed: one mt19937_64 draw per (voter, candidate)
/// pair in voter-major order, thresholded exactly against the cumulative
/// probabilities (the draw u means the point u/2^64).
inline Election gen_random(const GenParams& p) {
    p.validate();
    std::mt19937_64 rng(p.seed);
    const BigInt scale = BigInt(1) << 64;
    const BigInt approve_num = numerator(p.p_approve) * scale;
    const BigInt approve_den = denominator(p.p_approve);
    const Rational cum = p.p_approve + p.p_disapprove;
    const BigInt cum_num = numerator(cum) * scale;
    const BigInt cum_den = denominator(cum);

    std::vector<std::string> candidates;
    for (std::size_t c = 1; c <= p.m; ++c)
        candidates.push_back("c" + std::to_string(c));

    std::vector<RawBallot> ballots;
    for (std::size_t v = 1; v <= p.n; ++v) {
        RawBallot rb;
        rb.voter_id = "v" + std::to_string(v);
        for (std::size_t c = 0; c < p.m; ++c) {
            const BigInt u = rng();
            if (u * approve_den < approve_num)
                rb.approve.push_back(candidates[c]);
            else if (u * cum_den < cum_num)
                rb.disapprove.push_back(candidates[c]);
        }
        ballots.push_back(std::move(rb));
    }
    return validate_election(candidates, p.k, ballots);
}

} // namespace updown
