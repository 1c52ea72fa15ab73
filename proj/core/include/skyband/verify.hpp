#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Ground-truth checkers. Everything here is a pure function of true means
// and algorithm outputs/traces; nothing samples.

namespace sky {

struct RunTrace;  // skyline.hpp

struct Violation {
    int condition = 0;   // 1 or 2, the violated clause
    std::size_t s = 0;   // skyline witness
    std::size_t t = 0;   // offending arm
    double margin = 0.0;  // amount by which mu[s] >= mu[t] - eps fails
};

struct ViolationReport {
    bool valid = false;
    std::vector<Violation> violations;
};

/// Checks the two approximate-skyline conditions against true means:
///   1. every t not in S has its nearest left member s of S with
///      mu[s] >= mu[t] - eps;
///   2. every s in S satisfies mu[s] >= mu[t] - eps for all t <= s.
/// S must be sorted, non-empty and contain arm 0 (condition 1 needs a
/// predecessor for every excluded arm).
ViolationReport is_eps_skyline(std::span<const double> means, std::span<const std::size_t> S,
                               double epsilon);

/// Running-maximum skyline with weak dominance: t is kept iff no s < t has
/// mu[s] > mu[t]. Ties with the running maximum survive.
std::vector<std::size_t> exact_skyline(std::span<const double> means);

/// True iff mu[i] >= mu[j] - epsilon for every j in [lo, hi].
bool is_eps_best(std::span<const double> means, std::size_t lo, std::size_t hi, std::size_t i,
                 double epsilon);

struct RoundCheck {
    std::size_t level = 0;    // 1-based
    std::size_t ordinal = 0;  // 1-based within the level
    double best_mean = 0.0;   // exact best mean in the round's block
    bool ident_ok = false;    // chosen arm within eps/12 of best_mean
    bool msmnt_ok = false;    // estimate within eps/12 of the chosen arm's mean
};

struct EventCheck {
    bool line1_ok = false;  // arm-0 estimate within eps/12
    std::vector<RoundCheck> rounds;
    bool overall = false;
};

/// Detects whether the run satisfied the success event every guarantee is
/// conditioned on: each round's chosen arm is within eps/12 of its block's
/// best mean, each measurement is within eps/12 of the chosen arm's true
/// mean, and the initial arm-0 estimate is within eps/12.
EventCheck check_event_E(const RunTrace& trace, std::span<const double> means, double epsilon);

}  // namespace sky
