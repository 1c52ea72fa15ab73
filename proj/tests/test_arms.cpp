#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "skyband/arms.hpp"

using namespace sky;

TEST_SUITE_BEGIN("arms");

TEST_CASE("make_instance derives analytic means") {
    CHECK(make_instance({BernoulliArm{0.3}}).means() == std::vector<double>{0.3});
    CHECK(make_instance({DeterministicArm{0.7}}).means() == std::vector<double>{0.7});
    // Two-point law on {0,1} with equal mass: expectation 0.5.
    Instance inst = make_instance({DiscreteArm{{0.0, 1.0}, {0.5, 0.5}}});
    CHECK(inst.means() == std::vector<double>{0.5});
}

TEST_CASE("make_instance rejects bad specs and names the arm") {
    CHECK_THROWS_AS(make_instance({}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_instance({BernoulliArm{0.5}, BernoulliArm{1.5}}),
                         doctest::Contains("arm 1"), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({DeterministicArm{-0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({DiscreteArm{{0.5}, {0.9}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({DiscreteArm{{1.2}, {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({DiscreteArm{{0.1, 0.2}, {0.5}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({DiscreteArm{{}, {}}}), std::invalid_argument);
}

TEST_CASE("pull: degenerate laws and bounds checking") {
    SamplingOracle oracle(make_instance({BernoulliArm{1.0}, BernoulliArm{0.0}}), 17);
    for (int i = 0; i < 50; ++i) {
        CHECK(oracle.pull(0) == 1.0);
        CHECK(oracle.pull(1) == 0.0);
    }
    CHECK_THROWS_AS(oracle.pull(2), std::out_of_range);
    CHECK_THROWS_AS(oracle.pull_sum(2, 1), std::out_of_range);
}

TEST_CASE("pull: empirical mean of a fair coin over 10000 draws") {
    SamplingOracle oracle(make_instance({BernoulliArm{0.5}}), 42);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) sum += oracle.pull(0);
    CHECK(std::abs(sum / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("counters: totals and per-arm accounting") {
    SamplingOracle oracle(make_instance({BernoulliArm{0.4}, BernoulliArm{0.6}}), 7);
    CHECK(total_samples(oracle) == 0);
    oracle.pull(0);
    oracle.pull(0);
    oracle.pull(1);
    CHECK(total_samples(oracle) == 3);
    oracle.pull_sum(1, 4);
    CHECK(total_samples(oracle) == 7);
    CHECK(oracle.pulls_per_arm() == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("property: pulls_total equals the per-arm sum after random pulls") {
    std::mt19937_64 gen(99);
    for (int rep = 0; rep < 25; ++rep) {
        Instance inst = make_instance({BernoulliArm{0.2}, DeterministicArm{0.5},
                                       DiscreteArm{{0.0, 0.5, 1.0}, {0.25, 0.5, 0.25}}});
        SamplingOracle oracle(inst, gen());
        for (int t = 0; t < 200; ++t) oracle.pull(gen() % 3);
        std::uint64_t sum = 0;
        for (std::uint64_t c : oracle.pulls_per_arm()) sum += c;
        CHECK(sum == oracle.total_samples());
    }
}

TEST_CASE("property: identical seed and pull sequence give identical rewards") {
    Instance inst = make_instance({BernoulliArm{0.37}, DiscreteArm{{0.1, 0.9}, {0.3, 0.7}},
                                   DeterministicArm{0.25}});
    std::mt19937_64 seq(5);
    std::vector<std::size_t> arms;
    for (int t = 0; t < 500; ++t) arms.push_back(seq() % 3);

    SamplingOracle a(inst, 1234), b(inst, 1234);
    for (std::size_t i : arms) CHECK(a.pull(i) == b.pull(i));
}

TEST_CASE("pull_sum is bit-identical to repeated pull") {
    Instance inst = make_instance({BernoulliArm{0.61}});
    SamplingOracle a(inst, 8), b(inst, 8);
    double sum = 0.0;
    for (int t = 0; t < 321; ++t) sum += a.pull(0);
    CHECK(b.pull_sum(0, 321) == sum);
    CHECK(a.total_samples() == b.total_samples());
}

TEST_CASE("deterministic arms: empirical mean is exact for any sample count") {
    SamplingOracle oracle(make_instance({DeterministicArm{0.7}}), 3);
    CHECK(oracle.pull_sum(0, 1) == 0.7);
    CHECK(oracle.pull_sum(0, 9) == doctest::Approx(6.3).epsilon(1e-12));
}

TEST_CASE("instance JSON round trip") {
    Instance inst = make_instance({BernoulliArm{0.3}, DeterministicArm{0.7},
                                   DiscreteArm{{0.0, 0.25, 1.0}, {0.125, 0.5, 0.375}}});
    const auto path = std::filesystem::temp_directory_path() / "skyband_test_instance.json";
    save_instance(inst, path);
    Instance back = load_instance(path);
    REQUIRE(back.size() == inst.size());
    CHECK(back.means() == inst.means());
    CHECK(back.arms()[0] == ArmSpec{BernoulliArm{0.3}});
    CHECK(back.arms()[1] == ArmSpec{DeterministicArm{0.7}});
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_instance("/nonexistent/skyband.json"), std::runtime_error);
}

TEST_SUITE_END();
