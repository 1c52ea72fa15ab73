#include "skyband/subroutines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sky {

namespace {

void check_params(double epsilon, double delta, const char* who) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument(std::string(who) + ": epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument(std::string(who) + ": delta must lie in (0,1)");
}

}  // namespace

std::uint64_t hoeffding_samples(double epsilon, double delta) {
    check_params(epsilon, delta, "hoeffding_samples");
    return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

EstimateRecord est_mean(SamplingOracle& oracle, std::size_t arm, double epsilon, double delta) {
    const std::uint64_t n = hoeffding_samples(epsilon, delta);
    const double sum = oracle.pull_sum(arm, n);
    return EstimateRecord{arm, sum / static_cast<double>(n), n, epsilon, delta};
}

namespace {

// Median-elimination round plan: survivor count and per-arm pulls for each
// round until a single arm remains.
struct MeRound {
    std::uint64_t survivors;
    std::uint64_t pulls_per_arm;
};

std::vector<MeRound> me_schedule(std::uint64_t size, double epsilon, double delta) {
    std::vector<MeRound> rounds;
    double eps_r = epsilon / 4.0;
    double delta_r = delta / 2.0;
    for (std::uint64_t s = size; s > 1; s = (s + 1) / 2) {
        const double pulls = std::ceil(4.0 / (eps_r * eps_r) * std::log(3.0 / delta_r));
        rounds.push_back(MeRound{s, static_cast<std::uint64_t>(pulls)});
        eps_r *= 0.75;
        delta_r *= 0.5;
    }
    return rounds;
}

std::uint64_t me_sample_count(std::uint64_t size, double epsilon, double delta) {
    std::uint64_t total = 0;
    for (const MeRound& r : me_schedule(size, epsilon, delta)) total += r.survivors * r.pulls_per_arm;
    return total;
}

std::uint64_t uniform_sample_count(std::uint64_t size, double epsilon, double delta) {
    return size * hoeffding_samples(epsilon / 2.0, delta / static_cast<double>(size));
}

FindBestStrategy resolve(std::uint64_t size, double epsilon, double delta, FindBestStrategy s) {
    if (s != FindBestStrategy::kAuto) return s;
    return uniform_sample_count(size, epsilon, delta) <= me_sample_count(size, epsilon, delta)
               ? FindBestStrategy::kUniform
               : FindBestStrategy::kMedianElimination;
}

std::size_t find_best_uniform(SamplingOracle& oracle, std::size_t lo, std::size_t hi,
                              double epsilon, double delta) {
    const std::uint64_t size = hi - lo + 1;
    const std::uint64_t per_arm = hoeffding_samples(epsilon / 2.0, delta / static_cast<double>(size));
    std::size_t best = lo;
    double best_mean = -1.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double mean = oracle.pull_sum(i, per_arm) / static_cast<double>(per_arm);
        if (mean > best_mean) {  // strict: ties stay with the lower index
            best_mean = mean;
            best = i;
        }
    }
    return best;
}

std::size_t find_best_median_elimination(SamplingOracle& oracle, std::size_t lo, std::size_t hi,
                                         double epsilon, double delta) {
    std::vector<std::size_t> alive(hi - lo + 1);
    std::iota(alive.begin(), alive.end(), lo);

    double eps_r = epsilon / 4.0;
    double delta_r = delta / 2.0;
    std::vector<double> means;
    std::vector<std::size_t> order;
    while (alive.size() > 1) {
        const auto per_arm = static_cast<std::uint64_t>(
            std::ceil(4.0 / (eps_r * eps_r) * std::log(3.0 / delta_r)));
        means.resize(alive.size());
        for (std::size_t j = 0; j < alive.size(); ++j)
            means[j] = oracle.pull_sum(alive[j], per_arm) / static_cast<double>(per_arm);

        // Keep the ceil(half) best by empirical mean, ties toward lower
        // arm index. Sorting positions keeps the surviving set ordered.
        order.resize(alive.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (means[a] != means[b]) return means[a] > means[b];
            return alive[a] < alive[b];
        });
        const std::size_t keep = (alive.size() + 1) / 2;
        order.resize(keep);
        std::sort(order.begin(), order.end());
        std::vector<std::size_t> next;
        next.reserve(keep);
        for (std::size_t pos : order) next.push_back(alive[pos]);
        alive = std::move(next);

        eps_r *= 0.75;
        delta_r *= 0.5;
    }
    return alive.front();
}

}  // namespace

std::size_t find_best(SamplingOracle& oracle, std::size_t lo, std::size_t hi, double epsilon,
                      double delta, FindBestStrategy strategy) {
    if (lo > hi || hi >= oracle.instance().size())
        throw std::invalid_argument("find_best: invalid block range");
    check_params(epsilon, delta, "find_best");
    if (lo == hi) return lo;  // only candidate, zero pulls
    switch (resolve(hi - lo + 1, epsilon, delta, strategy)) {
        case FindBestStrategy::kUniform:
            return find_best_uniform(oracle, lo, hi, epsilon, delta);
        default:
            return find_best_median_elimination(oracle, lo, hi, epsilon, delta);
    }
}

std::uint64_t find_best_sample_count(std::uint64_t size, double epsilon, double delta,
                                     FindBestStrategy strategy) {
    if (size == 0) throw std::invalid_argument("find_best_sample_count: empty block");
    check_params(epsilon, delta, "find_best_sample_count");
    if (size == 1) return 0;
    switch (resolve(size, epsilon, delta, strategy)) {
        case FindBestStrategy::kUniform:
            return uniform_sample_count(size, epsilon, delta);
        default:
            return me_sample_count(size, epsilon, delta);
    }
}

}  // namespace sky
