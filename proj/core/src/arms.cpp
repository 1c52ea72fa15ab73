#include "skyband/arms.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sky {

namespace {

constexpr double kProbSumTol = 1e-12;

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0 && std::isfinite(x); }

}  // namespace

double arm_mean(const ArmSpec& spec) {
    return std::visit(
        [](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, BernoulliArm>) {
                return a.p;
            } else if constexpr (std::is_same_v<T, DeterministicArm>) {
                return a.value;
            } else {
                double m = 0.0;
                for (std::size_t i = 0; i < a.support.size(); ++i) m += a.support[i] * a.probs[i];
                return m;
            }
        },
        spec);
}

void validate_arm(const ArmSpec& spec) {
    std::visit(
        [](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, BernoulliArm>) {
                if (!in_unit_interval(a.p))
                    throw std::invalid_argument("bernoulli p must lie in [0,1]");
            } else if constexpr (std::is_same_v<T, DeterministicArm>) {
                if (!in_unit_interval(a.value))
                    throw std::invalid_argument("deterministic value must lie in [0,1]");
            } else {
                if (a.support.empty())
                    throw std::invalid_argument("discrete support must be non-empty");
                if (a.support.size() != a.probs.size())
                    throw std::invalid_argument("discrete support/probs size mismatch");
                for (double s : a.support)
                    if (!in_unit_interval(s))
                        throw std::invalid_argument("discrete support values must lie in [0,1]");
                double sum = 0.0;
                for (double p : a.probs) {
                    if (!in_unit_interval(p))
                        throw std::invalid_argument("discrete probabilities must lie in [0,1]");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > kProbSumTol)
                    throw std::invalid_argument("discrete probabilities must sum to 1");
            }
        },
        spec);
}

Instance make_instance(std::vector<ArmSpec> specs) {
    if (specs.empty()) throw std::invalid_argument("instance needs at least one arm");
    Instance inst;
    inst.means_.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            validate_arm(specs[i]);
        } catch (const std::invalid_argument& e) {
            std::ostringstream msg;
            msg << "arm " << i << ": " << e.what();
            throw std::invalid_argument(msg.str());
        }
        inst.means_.push_back(arm_mean(specs[i]));
    }
    inst.arms_ = std::move(specs);
    return inst;
}

namespace {

using nlohmann::json;

json arm_to_json(const ArmSpec& spec) {
    return std::visit(
        [](const auto& a) -> json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, BernoulliArm>) {
                return json{{"kind", "bernoulli"}, {"p", a.p}};
            } else if constexpr (std::is_same_v<T, DeterministicArm>) {
                return json{{"kind", "deterministic"}, {"v", a.value}};
            } else {
                return json{{"kind", "truncated-discrete"},
                            {"support", a.support},
                            {"probs", a.probs}};
            }
        },
        spec);
}

ArmSpec arm_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli") return BernoulliArm{j.at("p").get<double>()};
    if (kind == "deterministic") return DeterministicArm{j.at("v").get<double>()};
    if (kind == "truncated-discrete")
        return DiscreteArm{j.at("support").get<std::vector<double>>(),
                           j.at("probs").get<std::vector<double>>()};
    throw std::invalid_argument("unknown arm kind: " + kind);
}

}  // namespace

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    json j;
    in >> j;
    std::vector<ArmSpec> specs;
    for (const auto& a : j.at("arms")) specs.push_back(arm_from_json(a));
    return make_instance(std::move(specs));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    json arms = json::array();
    for (const auto& a : instance.arms()) arms.push_back(arm_to_json(a));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path.string());
    out << json{{"arms", std::move(arms)}}.dump(2) << '\n';
}

SamplingOracle::SamplingOracle(Instance instance, std::uint64_t seed)
    : instance_(std::move(instance)), rng_(seed), pulls_(instance_.size(), 0) {
    compiled_.reserve(instance_.size());
    for (const auto& spec : instance_.arms()) {
        Compiled c{};
        std::visit(
            [&c](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, BernoulliArm>) {
                    c.kind = Kind::bernoulli;
                    c.param = a.p;
                } else if constexpr (std::is_same_v<T, DeterministicArm>) {
                    c.kind = Kind::deterministic;
                    c.param = a.value;
                } else {
                    c.kind = Kind::discrete;
                    c.support = a.support;
                    c.cdf.reserve(a.probs.size());
                    double acc = 0.0;
                    for (double p : a.probs) {
                        acc += p;
                        c.cdf.push_back(acc);
                    }
                    c.cdf.back() = 1.0;  // absorb rounding in the last bucket
                }
            },
            spec);
        compiled_.push_back(std::move(c));
    }
}

// 53-bit uniform in [0,1); arithmetic is exact so sequences are
// bit-identical across platforms for a given seed.
inline double SamplingOracle::uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double SamplingOracle::pull(std::size_t i) {
    if (i >= compiled_.size()) throw std::out_of_range("pull: arm index out of range");
    ++pulls_[i];
    ++total_;
    const Compiled& c = compiled_[i];
    switch (c.kind) {
        case Kind::bernoulli:
            return uniform01() < c.param ? 1.0 : 0.0;
        case Kind::deterministic:
            return c.param;
        case Kind::discrete: {
            const double u = uniform01();
            std::size_t k = 0;
            while (u >= c.cdf[k]) ++k;
            return c.support[k];
        }
    }
    return 0.0;  // unreachable
}

double SamplingOracle::pull_sum(std::size_t i, std::uint64_t count) {
    if (i >= compiled_.size()) throw std::out_of_range("pull_sum: arm index out of range");
    const Compiled& c = compiled_[i];
    double sum = 0.0;
    switch (c.kind) {
        case Kind::bernoulli: {
            const double p = c.param;
            std::uint64_t ones = 0;
            for (std::uint64_t t = 0; t < count; ++t) ones += uniform01() < p ? 1 : 0;
            sum = static_cast<double>(ones);
            break;
        }
        case Kind::deterministic:
            sum = c.param * static_cast<double>(count);
            break;
        case Kind::discrete:
            for (std::uint64_t t = 0; t < count; ++t) {
                const double u = uniform01();
                std::size_t k = 0;
                while (u >= c.cdf[k]) ++k;
                sum += c.support[k];
            }
            break;
    }
    pulls_[i] += count;
    total_ += count;
    return sum;
}

}  // namespace sky
