#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <variant>
#include <vector>

// Arm reward distributions, problem instances and the metered sampling
// oracle. Every algorithm in this library observes arms exclusively through
// SamplingOracle::pull, which counts each draw; sample-complexity numbers
// reported elsewhere are oracle counter deltas, never formulas.

namespace sky {

/// Bernoulli reward: 1 with probability p, else 0.
struct BernoulliArm {
    double p = 0.0;
    bool operator==(const BernoulliArm&) const = default;
};

/// Point mass at value (zero variance).
struct DeterministicArm {
    double value = 0.0;
    bool operator==(const DeterministicArm&) const = default;
};

/// Finitely supported distribution on [0,1]; probs sum to 1.
struct DiscreteArm {
    std::vector<double> support;
    std::vector<double> probs;
    bool operator==(const DiscreteArm&) const = default;
};

using ArmSpec = std::variant<BernoulliArm, DeterministicArm, DiscreteArm>;

/// Analytic mean of the arm's law.
double arm_mean(const ArmSpec& spec);

/// Throws std::invalid_argument describing the first violated constraint.
void validate_arm(const ArmSpec& spec);

/// An ordered list of arms with their analytically derived true means.
/// The means are ground truth for verifiers and the harness; algorithms
/// never see them.
class Instance {
  public:
    Instance() = default;

    std::size_t size() const { return arms_.size(); }
    const std::vector<ArmSpec>& arms() const { return arms_; }
    const std::vector<double>& means() const { return means_; }

  private:
    friend Instance make_instance(std::vector<ArmSpec> specs);
    std::vector<ArmSpec> arms_;
    std::vector<double> means_;
};

/// Builds an Instance, validating every spec. Errors name the offending
/// arm index.
Instance make_instance(std::vector<ArmSpec> specs);

/// JSON instance file: {"arms":[{"kind":"bernoulli","p":0.3}, ...]}.
/// Means are never serialized; make_instance rederives them on load.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Metered sample access to an Instance. One explicitly seeded generator
/// per oracle; identical seed and pull sequence give a bit-identical
/// reward sequence. Single-owner: do not share across threads.
class SamplingOracle {
  public:
    SamplingOracle(Instance instance, std::uint64_t seed);

    /// One independent draw from arm i's law. Counts one pull.
    double pull(std::size_t i);

    /// Sum of `count` sequential pulls of arm i. Equivalent to (and
    /// counted as) `count` calls to pull(i); exists because the
    /// estimation loops are the hot path.
    double pull_sum(std::size_t i, std::uint64_t count);

    std::uint64_t total_samples() const { return total_; }
    const std::vector<std::uint64_t>& pulls_per_arm() const { return pulls_; }
    const Instance& instance() const { return instance_; }

  private:
    double uniform01();

    enum class Kind : std::uint8_t { bernoulli, deterministic, discrete };
    struct Compiled {
        Kind kind;
        double param;  // p for bernoulli, value for deterministic
        std::vector<double> cdf;      // discrete only
        std::vector<double> support;  // discrete only
    };

    Instance instance_;
    std::vector<Compiled> compiled_;
    std::mt19937_64 rng_;
    std::vector<std::uint64_t> pulls_;
    std::uint64_t total_ = 0;
};

/// Convenience alias for SamplingOracle::total_samples, matching the
/// operation vocabulary used across the library.
inline std::uint64_t total_samples(const SamplingOracle& oracle) {
    return oracle.total_samples();
}

}  // namespace sky
