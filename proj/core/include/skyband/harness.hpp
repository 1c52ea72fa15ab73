#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skyband/arms.hpp"
#include "skyband/skyline.hpp"

// Experiment runner: seeded trials, grid sweeps, CSV output and summary
// statistics. Trials parallelize across worker threads with one oracle per
// trial; results merge in (cell, trial) order so output is deterministic
// regardless of scheduling.

namespace sky {

enum class Algo { kAlg1, kAlg1Truncate, kNaive };

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& name);

struct TrialRecord {
    std::uint64_t trial_id = 0;
    Algo algo = Algo::kAlg1;
    std::size_t n = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t samples_total = 0;
    std::size_t skyline_size = 0;
    bool valid = false;                 // is_eps_skyline against true means
    std::optional<bool> event_e;        // skyline algorithms only
    std::size_t levels_used = 0;
    double wall_ms = 0.0;
    std::string diagnostic;             // non-empty on algorithm failure
};

/// Runs one algorithm on a fresh oracle seeded with `seed` and verifies the
/// output against the instance's true means. Level-cap overflows are
/// recorded as invalid with a diagnostic rather than thrown. Deterministic
/// given (instance, config, algo, seed) except for wall_ms.
TrialRecord run_trial(const Instance& instance, const Config& config, Algo algo,
                      std::uint64_t seed, std::uint64_t trial_id = 0);

struct GeneratorSpec {
    std::string kind = "uniform";  // "uniform" or "staircase"
    std::uint64_t seed = 0;        // instance seed (mixed with the cell)
};

struct SweepConfig {
    GeneratorSpec generator;
    std::vector<std::size_t> n_grid;
    std::vector<double> epsilon_grid;
    std::vector<double> delta_grid;
    std::uint32_t trials = 1;
    std::uint64_t base_seed = 0;
    std::vector<Algo> algos;
    std::filesystem::path out_csv;
    unsigned threads = 0;  // 0 = hardware concurrency
};

SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Runs every (n, epsilon, delta, algo) cell for the configured number of
/// trials, writes the CSV to config.out_csv and prints a per-cell summary
/// (median samples, success rate with Wilson 95% interval) to stdout.
/// The output path is validated before any trial runs.
std::vector<TrialRecord> sweep(const SweepConfig& config);

/// Exact CSV header used by sweep and the CLI.
std::string csv_header();
std::string to_csv_row(const TrialRecord& record);

/// Wilson score interval for a binomial proportion at 95% confidence.
struct WilsonInterval {
    double lower = 0.0;
    double upper = 0.0;
};
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t total);

/// Deterministic per-trial seed: base_seed mixed with the cell parameters
/// and trial id.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::size_t n, double epsilon,
                                double delta, Algo algo, std::uint64_t trial_id);

/// Runs fn(0..count-1) across `threads` workers (0 = hardware
/// concurrency). Exceptions propagate after all workers join.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace sky
