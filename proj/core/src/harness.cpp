#include "skyband/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "skyband/instances.hpp"
#include "skyband/verify.hpp"

namespace sky {

std::string to_string(Algo algo) {
    switch (algo) {
        case Algo::kAlg1: return "alg1";
        case Algo::kAlg1Truncate: return "alg1+truncate";
        case Algo::kNaive: return "naive";
    }
    return "?";
}

Algo algo_from_string(const std::string& name) {
    if (name == "alg1") return Algo::kAlg1;
    if (name == "alg1+truncate") return Algo::kAlg1Truncate;
    if (name == "naive") return Algo::kNaive;
    throw std::invalid_argument("unknown algorithm: " + name);
}

TrialRecord run_trial(const Instance& instance, const Config& config, Algo algo,
                      std::uint64_t seed, std::uint64_t trial_id) {
    TrialRecord record;
    record.trial_id = trial_id;
    record.algo = algo;
    record.n = instance.size();
    record.epsilon = config.epsilon;
    record.delta = config.delta;
    record.seed = seed;

    SamplingOracle oracle(instance, seed);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        SkylineResult result;
        if (algo == Algo::kNaive) {
            result = naive_skyline(oracle, config);
        } else {
            result = identify_skyline(oracle, config, algo == Algo::kAlg1Truncate);
            record.event_e =
                check_event_E(result.trace, instance.means(), config.epsilon).overall;
            record.levels_used = result.trace.levels.size();
        }
        record.samples_total = result.samples_total;
        record.skyline_size = result.skyline.size();
        record.valid = is_eps_skyline(instance.means(), result.skyline, config.epsilon).valid;
    } catch (const LevelCapError& e) {
        record.samples_total = oracle.total_samples();
        record.valid = false;
        record.diagnostic = e.what();
    }
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return record;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ v); }

std::uint64_t double_bits(double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    return bits;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::size_t n, double epsilon,
                                double delta, Algo algo, std::uint64_t trial_id) {
    std::uint64_t h = splitmix64(n);
    h = mix(h, double_bits(epsilon));
    h = mix(h, double_bits(delta));
    h = mix(h, static_cast<std::uint64_t>(algo));
    h = mix(h, trial_id);
    return base_seed ^ h;
}

void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep config: " + path.string());
    nlohmann::json j;
    in >> j;

    SweepConfig cfg;
    if (j.contains("generator")) {
        const auto& g = j.at("generator");
        cfg.generator.kind = g.value("kind", std::string("uniform"));
        cfg.generator.seed = g.value("seed", std::uint64_t{0});
    }
    cfg.n_grid = j.at("n").get<std::vector<std::size_t>>();
    cfg.epsilon_grid = j.at("epsilon").get<std::vector<double>>();
    cfg.delta_grid = j.at("delta").get<std::vector<double>>();
    cfg.trials = j.at("trials").get<std::uint32_t>();
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    for (const auto& name : j.at("algos")) cfg.algos.push_back(algo_from_string(name));
    cfg.out_csv = j.at("out").get<std::string>();
    cfg.threads = j.value("threads", 0u);
    return cfg;
}

std::string csv_header() {
    return "trial_id,algo,n,epsilon,delta,seed,samples_total,skyline_size,valid,event_E,"
           "levels_used,wall_ms";
}

std::string to_csv_row(const TrialRecord& r) {
    std::ostringstream row;
    row << r.trial_id << ',' << to_string(r.algo) << ',' << r.n << ',' << format_double(r.epsilon)
        << ',' << format_double(r.delta) << ',' << r.seed << ',' << r.samples_total << ','
        << r.skyline_size << ',' << (r.valid ? "true" : "false") << ',';
    if (r.event_e.has_value()) row << (*r.event_e ? "true" : "false");
    row << ',' << r.levels_used << ',' << format_double(r.wall_ms);
    return row.str();
}

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t total) {
    if (total == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // Phi^-1(0.975)
    const double nd = static_cast<double>(total);
    const double phat = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (phat + z2 / (2.0 * nd)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct Cell {
    std::size_t n;
    double epsilon;
    double delta;
    Algo algo;
};

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

std::vector<TrialRecord> sweep(const SweepConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("sweep: trials must be at least 1");
    if (config.n_grid.empty() || config.epsilon_grid.empty() || config.delta_grid.empty() ||
        config.algos.empty())
        throw std::invalid_argument("sweep: empty grid");

    // Fail on an unwritable output path before any trial runs.
    std::ofstream out(config.out_csv);
    if (!out) throw std::runtime_error("cannot write CSV output: " + config.out_csv.string());

    std::vector<Cell> cells;
    for (std::size_t n : config.n_grid)
        for (double eps : config.epsilon_grid)
            for (double delta : config.delta_grid)
                for (Algo algo : config.algos) cells.push_back(Cell{n, eps, delta, algo});

    // One instance per (n, epsilon) pair, shared across the cell's trials;
    // staircase geometry is driven by epsilon, so n must equal T*m + 1
    // divisibility-wise for that generator.
    auto make_cell_instance = [&](const Cell& cell) -> Instance {
        const std::uint64_t inst_seed =
            config.generator.seed ^ mix(splitmix64(cell.n), double_bits(cell.epsilon));
        if (config.generator.kind == "uniform") return gen_uniform_random(cell.n, inst_seed);
        if (config.generator.kind == "staircase") {
            const auto t =
                static_cast<std::size_t>(std::floor(1.0 / (4.0 * cell.epsilon))) + 1;
            if (cell.n % t != 0)
                throw std::invalid_argument("sweep: staircase requires n divisible by T");
            return gen_staircase(cell.epsilon, cell.n / t, inst_seed).instance;
        }
        throw std::invalid_argument("sweep: unknown generator kind: " + config.generator.kind);
    };

    std::vector<TrialRecord> records(cells.size() * config.trials);
    std::vector<Instance> instances(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) instances[c] = make_cell_instance(cells[c]);

    parallel_for_index(records.size(), config.threads, [&](std::size_t job) {
        const std::size_t c = job / config.trials;
        const std::uint64_t trial = job % config.trials;
        const Cell& cell = cells[c];
        const Config cfg{cell.epsilon, cell.delta};
        const std::uint64_t seed = derive_trial_seed(config.base_seed, cell.n, cell.epsilon,
                                                     cell.delta, cell.algo, trial);
        records[job] = run_trial(instances[c], cfg, cell.algo, seed, trial);
    });

    out << csv_header() << '\n';
    for (const TrialRecord& r : records) out << to_csv_row(r) << '\n';
    out.close();

    // Per-cell summary.
    std::cout << "cell summary (" << config.trials << " trials each)\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        std::vector<double> samples;
        std::uint64_t valid = 0;
        for (std::uint64_t t = 0; t < config.trials; ++t) {
            const TrialRecord& r = records[c * config.trials + t];
            samples.push_back(static_cast<double>(r.samples_total));
            valid += r.valid ? 1 : 0;
        }
        const double rate = static_cast<double>(valid) / config.trials;
        const WilsonInterval ci = wilson95(valid, config.trials);
        std::printf(
            "  algo=%-13s n=%-6zu eps=%-6g delta=%-6g median_samples=%-12.0f "
            "success=%.3f wilson95=[%.3f, %.3f]\n",
            to_string(cell.algo).c_str(), cell.n, cell.epsilon, cell.delta, median_of(samples),
            rate, ci.lower, ci.upper);
    }
    return records;
}

}  // namespace sky
