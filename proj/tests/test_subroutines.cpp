#include <doctest.h>

#include <cmath>
#include <random>

#include "skyband/subroutines.hpp"

using namespace sky;

TEST_SUITE_BEGIN("subroutines");

TEST_CASE("hoeffding_samples: closed form") {
    // ceil(ln(2/delta) / (2 eps^2)), evaluated independently:
    // ln(40)/0.02 = 184.44 -> 185; ln(4)/0.5 = 2.77 -> 3.
    CHECK(hoeffding_samples(0.1, 0.05) == 185);
    CHECK(hoeffding_samples(0.5, 0.5) == 3);

    CHECK_THROWS_AS(hoeffding_samples(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_samples(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_samples(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_samples(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("property: halving delta grows the count by at most ceil(ln2/(2e^2)) + 1") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.02, 0.9);
    for (int rep = 0; rep < 200; ++rep) {
        const double eps = u(gen);
        const double delta = u(gen);
        const auto base = hoeffding_samples(eps, delta);
        const auto halved = hoeffding_samples(eps, delta / 2.0);
        CHECK(halved >= base);
        const auto cap = static_cast<std::uint64_t>(
            std::ceil(std::log(2.0) / (2.0 * eps * eps))) + 1;
        CHECK(halved - base <= cap);
    }
}

TEST_CASE("est_mean: zero-variance arm measures exactly, with the scheduled count") {
    SamplingOracle oracle(make_instance({DeterministicArm{0.7}}), 1);
    const EstimateRecord rec = est_mean(oracle, 0, 0.1, 0.05);
    CHECK(rec.estimate == 0.7);
    CHECK(rec.samples_used == 185);
    CHECK(oracle.total_samples() == 185);
    CHECK(rec.arm == 0);
}

TEST_CASE("est_mean: PAC contract on a fair coin (Monte Carlo)") {
    // N(0,1) tail at 2.7 sigma puts the true in-tolerance rate near 0.99;
    // 950/1000 leaves wide slack.
    Instance inst = make_instance({BernoulliArm{0.5}});
    int within = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        SamplingOracle oracle(inst, 1000 + trial);
        if (std::abs(est_mean(oracle, 0, 0.1, 0.05).estimate - 0.5) <= 0.1) ++within;
    }
    CHECK(within >= 950);
}

TEST_CASE("find_best: singleton block returns immediately") {
    SamplingOracle oracle(make_instance({BernoulliArm{0.2}, BernoulliArm{0.9}}), 1);
    CHECK(find_best(oracle, 1, 1, 0.1, 0.1) == 1);
    CHECK(oracle.total_samples() == 0);
}

TEST_CASE("find_best: deterministic arms always yield the maximizer") {
    Instance inst = make_instance({DeterministicArm{0.1}, DeterministicArm{0.9},
                                   DeterministicArm{0.3}});
    for (auto strategy : {FindBestStrategy::kUniform, FindBestStrategy::kMedianElimination,
                          FindBestStrategy::kAuto}) {
        SamplingOracle oracle(inst, 5);
        CHECK(find_best(oracle, 0, 2, 0.05, 0.1, strategy) == 1);
    }
}

TEST_CASE("find_best: invalid inputs") {
    SamplingOracle oracle(make_instance({BernoulliArm{0.5}}), 1);
    CHECK_THROWS_AS(find_best(oracle, 0, 1, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(find_best(oracle, 1, 0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(find_best(oracle, 0, 0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("find_best: PAC contract on a gap-2eps pair (Monte Carlo)") {
    // Arms {0.4, 0.6} with eps = 0.1: only the second arm is eps-best.
    Instance inst = make_instance({BernoulliArm{0.4}, BernoulliArm{0.6}});
    int correct = 0;
    for (int trial = 0; trial < 500; ++trial) {
        SamplingOracle oracle(inst, 9000 + trial);
        if (find_best(oracle, 0, 1, 0.1, 0.1) == 1) ++correct;
    }
    CHECK(correct >= 450);
}

TEST_CASE("find_best: median elimination meets its contract on 20 arms") {
    std::vector<ArmSpec> specs(20, BernoulliArm{0.45});
    specs[13] = BernoulliArm{0.75};  // 2*eps above the field at eps = 0.15
    Instance inst = make_instance(std::move(specs));
    int correct = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SamplingOracle oracle(inst, 333 + trial);
        if (find_best(oracle, 0, 19, 0.15, 0.1, FindBestStrategy::kMedianElimination) == 13)
            ++correct;
    }
    CHECK(correct >= 90);
}

TEST_CASE("sample-count determinism: metered pulls equal the published schedule") {
    std::mt19937_64 gen(21);
    for (auto strategy : {FindBestStrategy::kUniform, FindBestStrategy::kMedianElimination,
                          FindBestStrategy::kAuto}) {
        for (std::size_t size : {2u, 3u, 7u, 32u}) {
            std::vector<ArmSpec> specs;
            for (std::size_t i = 0; i < size; ++i)
                specs.push_back(BernoulliArm{static_cast<double>(gen() % 100) / 100.0});
            SamplingOracle oracle(make_instance(std::move(specs)), gen());
            find_best(oracle, 0, size - 1, 0.2, 0.1, strategy);
            CHECK(oracle.total_samples() == find_best_sample_count(size, 0.2, 0.1, strategy));
        }
    }
}

TEST_CASE("budget linearity: pulls <= C * (size/eps^2) * ln(1/delta)") {
    // Documented constants: C = 12 for the uniform schedule, C = 2048 for
    // median elimination, over the metered domain below.
    const double eps = 0.2, delta = 0.1;
    for (std::size_t size : {10u, 100u, 1000u}) {
        const double budget_unit = size / (eps * eps) * std::log(1.0 / delta);
        CHECK(find_best_sample_count(size, eps, delta, FindBestStrategy::kUniform) <=
              12.0 * budget_unit);
        CHECK(find_best_sample_count(size, eps, delta, FindBestStrategy::kMedianElimination) <=
              2048.0 * budget_unit);
        CHECK(find_best_sample_count(size, eps, delta, FindBestStrategy::kAuto) <=
              12.0 * budget_unit);
    }
}

TEST_SUITE_END();
