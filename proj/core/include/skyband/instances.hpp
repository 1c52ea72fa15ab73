#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "skyband/arms.hpp"

// Instance generators: seeded uniform-random workloads and the staircase
// hard instances, where T consecutive groups of m Bernoulli arms sit at
// base means 1/4, 1/4 + 2*eps, ... and each group hides one planted arm
// 2*eps above its base. Recovering every planted position from a skyline
// is the reduction decode_guesses implements.

namespace sky {

/// n Bernoulli arms with means drawn i.i.d. uniform on [0,1].
Instance gen_uniform_random(std::size_t n, std::uint64_t seed);

struct StaircaseInstance {
    std::size_t num_levels = 0;     // T
    std::size_t arms_per_level = 0; // m
    std::vector<double> base_means; // p_t = 1/4 + 2*eps*(t-1)
    std::vector<std::size_t> planted; // c_t in [1..m], 1-based within level
    // Arm 0 is a deterministic 0 prepended so the skyline convention
    // (arm 0 always kept) coexists with the reduction; group t's arms
    // occupy global indices (t-1)*m + 1 .. t*m.
    Instance instance;
};

/// Builds a staircase with T = floor(1/(4*eps)) + 1 levels, so the top
/// base mean is at most 3/4 and every planted mean at most 1. Requires
/// 0 < eps <= 1/8 and m >= 1. Planted positions are drawn from the seed.
StaircaseInstance gen_staircase(double epsilon, std::size_t m, std::uint64_t seed);

/// Reads the planted-position guesses off a skyline: guess t is the
/// within-group position of the largest skyline index in group t's range.
/// Returns nullopt when some group has no skyline member (a wrong guess,
/// not an error). Skyline index 0 (the prepended arm) is ignored.
std::optional<std::vector<std::size_t>> decode_guesses(std::span<const std::size_t> S,
                                                       std::size_t num_levels,
                                                       std::size_t arms_per_level);

/// Sidecar JSON ({"T":..., "m":..., "planted":[...]}) accompanying a
/// staircase instance file so the harness can score recoveries.
void save_staircase_sidecar(const StaircaseInstance& stair, const std::filesystem::path& path);

struct StaircaseSidecar {
    std::size_t num_levels = 0;
    std::size_t arms_per_level = 0;
    std::vector<std::size_t> planted;
};

StaircaseSidecar load_staircase_sidecar(const std::filesystem::path& path);

}  // namespace sky
