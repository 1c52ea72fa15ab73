#pragma once

#include <cstdint>

#include "skyband/arms.hpp"

// The two sampling primitives the skyline algorithm composes: fixed-budget
// mean estimation and PAC best-arm identification over a contiguous block.
// Both consume a seed-independent number of pulls for fixed (block size,
// epsilon, delta); the schedules below are deterministic.

namespace sky {

/// Two-sided Hoeffding count: ceil(ln(2/delta) / (2*epsilon^2)) pulls give
/// |empirical mean - true mean| <= epsilon with probability >= 1 - delta
/// for rewards in [0,1].
std::uint64_t hoeffding_samples(double epsilon, double delta);

struct EstimateRecord {
    std::size_t arm = 0;
    double estimate = 0.0;  // empirical mean, in [0,1]
    std::uint64_t samples_used = 0;
    double epsilon = 0.0;
    double delta = 0.0;
};

/// Pulls arm i exactly hoeffding_samples(epsilon, delta) times and returns
/// the empirical mean.
EstimateRecord est_mean(SamplingOracle& oracle, std::size_t arm, double epsilon, double delta);

/// How find_best spends its budget.
///
/// kMedianElimination is the classical schedule: round r samples each
/// survivor ceil((4/eps_r^2) * ln(3/delta_r)) times with eps_1 = eps/4,
/// delta_1 = delta/2, keeps the ceil(half) with empirical means above the
/// median (ties toward lower index), then eps <- 3/4*eps, delta <- delta/2.
/// Its pull count is linear in the block size with no log(block) factor,
/// but the round constants are large.
///
/// kUniform samples every arm to +-eps/2 with failure budget delta/size
/// each and returns the empirical argmax (lowest index wins ties). It
/// carries a log(size) factor but far smaller constants.
///
/// kAuto picks whichever schedule is cheaper for the given
/// (size, eps, delta); the choice is data-independent.
enum class FindBestStrategy { kAuto, kMedianElimination, kUniform };

/// Returns an index in [lo, hi] that is, with probability >= 1 - delta, an
/// epsilon-best arm of the block (its mean is within epsilon of the block
/// maximum). A singleton block is returned immediately with zero pulls.
std::size_t find_best(SamplingOracle& oracle, std::size_t lo, std::size_t hi, double epsilon,
                      double delta, FindBestStrategy strategy = FindBestStrategy::kAuto);

/// Exact number of pulls find_best will consume for a block of `size`
/// arms. Deterministic; used for metering tests and the auto strategy.
std::uint64_t find_best_sample_count(std::uint64_t size, double epsilon, double delta,
                                     FindBestStrategy strategy = FindBestStrategy::kAuto);

}  // namespace sky
