#include "skyband/skyline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace sky {

namespace {

void check_config(const Config& config) {
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw std::invalid_argument("config: epsilon must lie in (0,1)");
    if (!(config.delta > 0.0 && config.delta < 1.0))
        throw std::invalid_argument("config: delta must lie in (0,1)");
}

// ceil(log2 n) for n >= 1.
std::size_t ceil_log2(std::size_t n) {
    return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

}  // namespace

std::vector<Block> split_block(const Block& block, std::size_t chosen, double lower_bound,
                               double upper_bound, double epsilon) {
    if (chosen < block.lo || chosen > block.hi)
        throw std::invalid_argument("split_block: chosen arm outside block");
    if (!(upper_bound > lower_bound))
        throw std::invalid_argument("split_block: upper bound must exceed lower bound");

    const std::size_t width = chosen - block.lo;
    if (width == 0) return {};

    // Child count must not exceed the real target b; sizing against
    // floor(b) guarantees ceil(width/size) <= floor(b) <= b. After the
    // margin test b >= 5/3, so floor(b) >= 1.
    const double target = 4.0 / epsilon * (upper_bound - lower_bound);
    const std::size_t divisor = std::max<std::size_t>(1, static_cast<std::size_t>(target));
    const std::size_t size = (width + divisor - 1) / divisor;

    std::vector<Block> children;
    std::size_t ordinal = 1;
    for (std::size_t lo = block.lo; lo < chosen; lo += size) {
        const std::size_t hi = std::min(lo + size - 1, chosen - 1);
        children.push_back(Block{block.level + 1, ordinal++, lo, hi});
    }
    return children;
}

SkylineResult identify_skyline(SamplingOracle& oracle, const Config& config, bool truncate,
                               FindBestStrategy strategy) {
    check_config(config);
    const std::size_t n = oracle.instance().size();
    const double eps = config.epsilon;
    const std::uint64_t samples_at_entry = oracle.total_samples();
    const std::size_t level_cap = 2 * ceil_log2(n) + 2;

    SkylineResult result;
    std::set<std::size_t> skyline{0};

    const EstimateRecord first = est_mean(oracle, 0, eps / 12.0, config.delta / 2.0);
    result.estimates[0] = first.estimate;
    result.trace.initial = first;

    std::vector<Block> blocks;
    if (n > 1) blocks.push_back(Block{1, 1, 1, n - 1});

    for (std::size_t level = 1; !blocks.empty(); ++level) {
        if (level > level_cap)
            throw LevelCapError("identify_skyline: level cap exceeded (success event failed)");

        const std::size_t block_count = blocks.size();
        const double delta_level = std::ldexp(config.delta, -static_cast<int>(level + 1));
        const double delta_round = delta_level / static_cast<double>(block_count);

        LevelRecord record;
        record.block_count = block_count;
        for (const Block& b : blocks) {
            record.arms_per_block.push_back(b.size());
            record.arm_count += b.size();
        }

        std::vector<Block> next_blocks;
        for (const Block& block : blocks) {
            RoundRecord round;
            round.block = block;
            round.delta_level = delta_level;
            round.delta_round = delta_round;

            // Nearest skyline member left of the block; arm 0 guarantees
            // one exists. Blocks are processed in ascending order, so this
            // sees contributions from earlier blocks of the same level.
            auto it = skyline.lower_bound(block.lo);
            round.prev = *std::prev(it);
            round.lower_bound = eps / 2.0 + result.estimates.at(round.prev);

            const std::uint64_t before = oracle.total_samples();
            round.chosen =
                find_best(oracle, block.lo, block.hi, eps / 12.0, delta_round / 2.0, strategy);
            round.estimate =
                est_mean(oracle, round.chosen, eps / 12.0, delta_round / 2.0).estimate;
            round.samples_this_round = oracle.total_samples() - before;

            if (round.lower_bound + eps / 4.0 > round.estimate) {
                // Deactivate the whole block.
                record.rounds.push_back(round);
                continue;
            }

            round.contributed = true;
            round.upper_bound = round.estimate + eps / 6.0;
            round.target_children =
                4.0 / eps * (round.upper_bound - round.lower_bound);
            skyline.insert(round.chosen);
            result.estimates[round.chosen] = round.estimate;

            for (const Block& child : split_block(block, round.chosen, round.lower_bound,
                                                  round.upper_bound, eps))
                next_blocks.push_back(child);
            record.rounds.push_back(round);
        }

        result.trace.levels.push_back(std::move(record));
        blocks = std::move(next_blocks);
        for (std::size_t m = 0; m < blocks.size(); ++m) blocks[m].ordinal = m + 1;
    }

    result.skyline.assign(skyline.begin(), skyline.end());
    if (truncate) result.skyline = truncate_skyline(result.skyline, result.estimates, eps);
    result.samples_total = oracle.total_samples() - samples_at_entry;
    return result;
}

std::vector<std::size_t> truncate_skyline(const std::vector<std::size_t>& S,
                                          const std::map<std::size_t, double>& M, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("truncate_skyline: epsilon must lie in (0,1)");
    if (S.empty() || S.front() != 0)
        throw std::invalid_argument("truncate_skyline: skyline must start at arm 0");
    if (!std::is_sorted(S.begin(), S.end()))
        throw std::invalid_argument("truncate_skyline: skyline must be sorted");
    for (std::size_t s : S)
        if (!M.count(s))
            throw std::invalid_argument("truncate_skyline: missing estimate for arm " +
                                        std::to_string(s));

    std::vector<std::size_t> kept{S.front()};
    double anchor_estimate = M.at(S.front());
    for (std::size_t idx = 1; idx < S.size(); ++idx) {
        const double candidate = M.at(S[idx]);
        if (anchor_estimate + 0.75 * epsilon > candidate) continue;  // remove s'
        kept.push_back(S[idx]);
        anchor_estimate = candidate;
    }
    return kept;
}

SkylineResult naive_skyline(SamplingOracle& oracle, const Config& config) {
    check_config(config);
    const std::size_t n = oracle.instance().size();
    const std::uint64_t samples_at_entry = oracle.total_samples();

    SkylineResult result;
    const double per_arm_delta = config.delta / static_cast<double>(n);
    std::vector<double> estimates(n);
    for (std::size_t i = 0; i < n; ++i) {
        estimates[i] = est_mean(oracle, i, config.epsilon / 2.0, per_arm_delta).estimate;
        result.estimates[i] = estimates[i];
    }

    // Exact skyline of the estimates: keep t iff no earlier arm measured
    // strictly higher.
    double running_max = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (estimates[i] >= running_max) {
            result.skyline.push_back(i);
            running_max = estimates[i];
        }
    }
    result.samples_total = oracle.total_samples() - samples_at_entry;
    return result;
}

}  // namespace sky
