#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "skyband/arms.hpp"
#include "skyband/subroutines.hpp"

// The skyline identification algorithms. identify_skyline runs the
// level/block elimination scheme: arm 0 is measured and kept, the rest of
// the arms start as one block, and each level finds every block's
// approximate best arm, keeps it only if it beats the nearest skyline
// member to its left by a 3*eps/4 estimate margin, and splits the kept
// block's left part into child blocks for the next level. Blocks that fail
// the margin test are dropped whole, as are all arms right of a kept
// winner. naive_skyline is the estimate-everything baseline.

namespace sky {

struct Config {
    double epsilon = 0.1;  // in (0,1)
    double delta = 0.1;    // in (0,1)
};

/// Contiguous arm-index range processed as a unit. level and ordinal are
/// 1-based; lo/hi are inclusive.
struct Block {
    std::size_t level = 0;
    std::size_t ordinal = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t size() const { return hi - lo + 1; }
};

/// One block's processing record.
struct RoundRecord {
    Block block;
    double delta_level = 0.0;     // level failure budget
    double delta_round = 0.0;     // this block's share
    std::size_t prev = 0;         // nearest skyline member left of block.lo
    double lower_bound = 0.0;     // eps/2 + estimate[prev]
    std::size_t chosen = 0;       // the block's approximate best arm
    double estimate = 0.0;        // its measured mean
    bool contributed = false;     // joined the skyline?
    double upper_bound = 0.0;     // estimate + eps/6 (contributed only)
    double target_children = 0.0; // (4/eps)(U - L)    (contributed only)
    std::uint64_t samples_this_round = 0;
};

struct LevelRecord {
    std::size_t block_count = 0;              // blocks at this level
    std::size_t arm_count = 0;                // arms across those blocks
    std::vector<std::size_t> arms_per_block;  // per-block sizes
    std::vector<RoundRecord> rounds;
};

struct RunTrace {
    std::optional<EstimateRecord> initial;  // the arm-0 measurement
    std::vector<LevelRecord> levels;
};

struct SkylineResult {
    std::vector<std::size_t> skyline;        // sorted, always contains 0
    std::map<std::size_t, double> estimates; // arm -> measured mean
    RunTrace trace;
    std::uint64_t samples_total = 0;
};

/// Thrown when the level loop exceeds 2*ceil(log2 n) + 2 levels, which
/// cannot happen while the per-round success event holds. Callers treat it
/// as an algorithm failure, not a crash.
class LevelCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The main algorithm. With probability at least 1 - delta the returned
/// index set passes is_eps_skyline. When truncate is set the skyline is
/// additionally pared down to O(1/eps) members via truncate_skyline.
SkylineResult identify_skyline(SamplingOracle& oracle, const Config& config,
                               bool truncate = false,
                               FindBestStrategy strategy = FindBestStrategy::kAuto);

/// Left-to-right pruning: walking from arm 0, the next member s' is
/// removed iff estimate[s] + 3*eps/4 > estimate[s'], else the anchor
/// advances. Survivor count is at most ceil(12/(7*eps)) + 1.
std::vector<std::size_t> truncate_skyline(const std::vector<std::size_t>& S,
                                          const std::map<std::size_t, double>& M, double epsilon);

/// Baseline: estimates every arm to +-eps/2 with budget delta/n each and
/// returns the exact skyline of the estimates. Total pulls are exactly
/// n * hoeffding_samples(eps/2, delta/n).
SkylineResult naive_skyline(SamplingOracle& oracle, const Config& config);

/// Splits [block.lo, chosen-1] into consecutive child blocks sized so the
/// child count never exceeds the real target b = (4/eps)(U - L); the last
/// child may be shorter. Returns an empty list when chosen == block.lo.
std::vector<Block> split_block(const Block& block, std::size_t chosen, double lower_bound,
                               double upper_bound, double epsilon);

}  // namespace sky
