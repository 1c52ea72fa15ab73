#include "skyband/instances.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sky {

Instance gen_uniform_random(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("gen_uniform_random: n must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<ArmSpec> specs;
    specs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        specs.push_back(BernoulliArm{p});
    }
    return make_instance(std::move(specs));
}

StaircaseInstance gen_staircase(double epsilon, std::size_t m, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon <= 0.125))
        throw std::invalid_argument("gen_staircase: epsilon must lie in (0, 1/8]");
    if (m == 0) throw std::invalid_argument("gen_staircase: m must be at least 1");

    StaircaseInstance stair;
    stair.num_levels = static_cast<std::size_t>(std::floor(1.0 / (4.0 * epsilon))) + 1;
    stair.arms_per_level = m;

    std::mt19937_64 rng(seed);
    std::vector<ArmSpec> specs;
    specs.reserve(stair.num_levels * m + 1);
    specs.push_back(DeterministicArm{0.0});
    for (std::size_t t = 1; t <= stair.num_levels; ++t) {
        const double base = 0.25 + 2.0 * epsilon * static_cast<double>(t - 1);
        const double planted_mean = base + 2.0 * epsilon;
        if (planted_mean > 1.0)
            throw std::invalid_argument("gen_staircase: parameters push a mean above 1");
        stair.base_means.push_back(base);
        // c_t uniform on [1..m]
        const std::size_t c = 1 + static_cast<std::size_t>(rng() % m);
        stair.planted.push_back(c);
        for (std::size_t i = 1; i <= m; ++i)
            specs.push_back(BernoulliArm{i == c ? planted_mean : base});
    }
    stair.instance = make_instance(std::move(specs));
    return stair;
}

std::optional<std::vector<std::size_t>> decode_guesses(std::span<const std::size_t> S,
                                                       std::size_t num_levels,
                                                       std::size_t arms_per_level) {
    if (!std::is_sorted(S.begin(), S.end()))
        throw std::invalid_argument("decode_guesses: S must be sorted");
    std::vector<std::size_t> guesses(num_levels, 0);
    for (std::size_t s : S) {
        if (s == 0) continue;  // the prepended deterministic arm
        const std::size_t group = (s - 1) / arms_per_level;  // 0-based
        if (group >= num_levels) throw std::invalid_argument("decode_guesses: index beyond groups");
        guesses[group] = s - group * arms_per_level;  // position in [1..m]
    }
    for (std::size_t g : guesses)
        if (g == 0) return std::nullopt;  // some group never intersected S
    return guesses;
}

void save_staircase_sidecar(const StaircaseInstance& stair, const std::filesystem::path& path) {
    nlohmann::json j{{"T", stair.num_levels},
                     {"m", stair.arms_per_level},
                     {"planted", stair.planted}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sidecar file: " + path.string());
    out << j.dump(2) << '\n';
}

StaircaseSidecar load_staircase_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sidecar file: " + path.string());
    nlohmann::json j;
    in >> j;
    StaircaseSidecar sc;
    sc.num_levels = j.at("T").get<std::size_t>();
    sc.arms_per_level = j.at("m").get<std::size_t>();
    sc.planted = j.at("planted").get<std::vector<std::size_t>>();
    return sc;
}

}  // namespace sky
