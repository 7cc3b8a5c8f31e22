#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "edgeoff/errors.hpp"
#include "edgeoff/tdma.hpp"
#include "fixtures.hpp"

using namespace edgeoff;
using namespace edgeoff::tdma;
using testing::rate_scenario;
using testing::rel_diff;

namespace {

void check_allocation_invariants(const Scenario& sc, const TdmaAllocation& a) {
    const double T = sc.system.frame_T;
    const auto r = link_rates(sc);
    const double used = std::accumulate(a.slot_times.begin(), a.slot_times.end(), 0.0) + a.compute_tc;
    CHECK(rel_diff(used, T) <= 1e-9);
    CHECK(a.sense_t1s <= a.slot_times[0]);
    double elapsed = a.sense_t1s;
    double cap_sum = 0.0;
    for (std::size_t i = 0; i < sc.size(); ++i) {
        const std::size_t dev = a.sequence.slot_to_device[i];
        const double tx = (i == 0) ? a.slot_times[0] - a.sense_t1s : a.slot_times[i];
        const double start = (i == 0) ? a.sense_t1s : elapsed;
        const double sensed = sc.devices[dev].sensing_s * start;
        // causality holds with equality at the closed-form point
        CHECK(rel_diff(r[dev] * tx, sensed) <= 1e-9);
        CHECK(rel_diff(a.offloaded_bits[dev], sensed) <= 1e-9);
        if (a.offloaded_bits[dev] > 0.0)
            CHECK(rel_diff(a.offloaded_bits[dev] / a.compute_share[dev], a.compute_tc) <= 1e-9);
        if (i > 0) elapsed += a.slot_times[i];
        else elapsed = a.slot_times[0];
        cap_sum += a.compute_share[dev];
    }
    CHECK(rel_diff(cap_sum, sc.system.edge_capacity_C) <= 1e-12);
}

Scenario random_equal_s(std::mt19937_64& rng, std::size_t n) {
    Scenario sc = generate_scenario(SystemParams{}, n, {1e5, 1e6}, rng());
    return with_equal_sensing(sc, 5e5);
}

}  // namespace

TEST_CASE("ascending weighted-rate schedule") {
    CHECK(schedule_ascending_weighted_rate(rate_scenario({1, 1, 1}, {3, 1, 2})).slot_to_device ==
          std::vector<std::size_t>{1, 2, 0});
    Scenario weighted = rate_scenario({1, 1}, {1, 3});
    weighted.devices[0].weight_w = 2.0;
    CHECK(schedule_ascending_weighted_rate(weighted).slot_to_device == std::vector<std::size_t>{0, 1});
    CHECK(schedule_ascending_weighted_rate(rate_scenario({1, 1, 1}, {2, 2, 1})).slot_to_device ==
          std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("closed-form times on the two-device example") {
    const Scenario sc = rate_scenario({1, 1}, {1, 3}, 3.0);
    const SlotTimes t = closed_form_times(sc, {{0, 1}}, 0.0);
    CHECK(t.sense_t1s == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(t.slot_times[0] == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
    CHECK(t.slot_times[1] == doctest::Approx(1.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("closed-form times for a symmetric single device") {
    const Scenario sc = rate_scenario({2.5}, {2.5});
    const SlotTimes t = closed_form_times(sc, {{0}}, 0.2);
    CHECK(t.sense_t1s == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(t.slot_times[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(closed_form_times(sc, {{0}}, 1.5), ParameterError);
}

TEST_CASE("slot coefficients") {
    const Scenario sc = rate_scenario({1, 1}, {1, 3});
    const SlotCoefficients c = slot_data_coefficients(sc, {{0, 1}});
    CHECK(c.mu[0] == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(c.mu[1] == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
    CHECK(c.lambda == doctest::Approx(9.0 / 8.0).epsilon(1e-15));
    const SlotCoefficients one = slot_data_coefficients(rate_scenario({4}, {4}), {{0}});
    CHECK(one.mu[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(one.lambda == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("slot coefficients agree with the closed-form times") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Scenario sc = generate_scenario(SystemParams{}, 1 + trial % 9, {1e5, 1e6}, rng());
        const auto seq = benchmark_sequence(sc, BenchmarkKind::random, rng());
        const auto r = link_rates(sc);
        const double tc = 0.3;
        const SlotTimes t = closed_form_times(sc, seq, tc);
        const SlotCoefficients c = slot_data_coefficients(sc, seq);
        for (std::size_t i = 0; i < sc.size(); ++i) {
            const double tx = (i == 0) ? t.slot_times[0] - t.sense_t1s : t.slot_times[i];
            CHECK(rel_diff(r[seq.slot_to_device[i]] * tx, (1.0 - tc) * c.mu[i]) <= 1e-12);
        }
    }
}

TEST_CASE("compute split") {
    SystemParams sys;
    sys.frame_T = 1.0;
    sys.edge_capacity_C = 3.0;
    const std::vector<double> mu{3.0 / 8.0, 3.0 / 4.0};
    const ComputeSplit s = compute_split(9.0 / 8.0, mu, sys);
    CHECK(s.compute_tc == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
    CHECK(s.compute_share[0] + s.compute_share[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(s.compute_share[0] / mu[0] == doctest::Approx(s.compute_share[1] / mu[1]).epsilon(1e-15));

    sys.edge_capacity_C = 1e12 * 9.0 / 8.0;
    CHECK(compute_split(9.0 / 8.0, mu, sys).compute_tc <= 1e-9);

    sys.edge_capacity_C = 5.0;
    const std::vector<double> single{0.7};
    CHECK(compute_split(0.7, single, sys).compute_share[0] == doctest::Approx(5.0));

    const std::vector<double> zeros{0.0, 0.0};
    const ComputeSplit degenerate = compute_split(0.0, zeros, sys);
    CHECK(degenerate.compute_tc == 0.0);
    CHECK(degenerate.compute_share == zeros);
}

TEST_CASE("solve_tdma on the two-device example") {
    const Scenario sc = rate_scenario({1, 1}, {1, 3}, 3.0);
    const TdmaAllocation a = solve_tdma(sc);
    CHECK(a.sequence.slot_to_device == std::vector<std::size_t>{0, 1});
    CHECK(a.compute_tc == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
    CHECK(a.weighted_throughput == doctest::Approx(9.0 / 11.0).epsilon(1e-14));
    check_allocation_invariants(sc, a);
}

TEST_CASE("single-device closed form") {
    const Scenario sc = rate_scenario({2.0}, {5.0}, 4.0);
    const TdmaAllocation a = solve_tdma(sc);
    const double mu = 2.0 * 5.0 / 7.0;
    const double tc = mu / (mu + 4.0);
    CHECK(a.compute_tc == doctest::Approx(tc).epsilon(1e-14));
    CHECK(a.weighted_throughput == doctest::Approx((1.0 - tc) * mu).epsilon(1e-14));
}

TEST_CASE("allocation invariants on random scenarios") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Scenario sc = generate_scenario(SystemParams{}, 1 + trial % 24, {1e5, 1e6}, rng());
        check_allocation_invariants(sc, solve_tdma(sc));
    }
}

TEST_CASE("weights enter only the objective") {
    Scenario sc = rate_scenario({1, 2, 1.5}, {2, 1, 3}, 4.0);
    const TdmaAllocation plain = solve_tdma(sc, OffloadingSequence{{1, 0, 2}});
    sc.devices[1].weight_w = 3.0;
    const TdmaAllocation weighted = solve_tdma(sc, OffloadingSequence{{1, 0, 2}});
    CHECK(weighted.compute_tc == plain.compute_tc);
    CHECK(weighted.sum_throughput == doctest::Approx(plain.sum_throughput).epsilon(1e-15));
    CHECK(weighted.weighted_throughput ==
          doctest::Approx(plain.sum_throughput + 2.0 * plain.offloaded_bits[1]).epsilon(1e-14));
}

TEST_CASE("exhaustive search on the two-device example") {
    const Scenario sc = rate_scenario({1, 1}, {1, 3}, 3.0);
    const ExhaustiveResult best = exhaustive_sequence_search(sc);
    CHECK(best.best.slot_to_device == std::vector<std::size_t>{0, 1});
    CHECK(best.allocation.weighted_throughput == doctest::Approx(9.0 / 11.0).epsilon(1e-14));
    const double tc = 3.0 / 11.0;
    CHECK(rel_diff(s2_throughput(1.0, 1.0, 3.0, 1.0, 1.0, 1.0 - tc), 9.0 / 11.0) <= 1e-14);
    // reversed order from the same formula, with its own compute time
    const TdmaAllocation rev = solve_tdma(sc, OffloadingSequence{{1, 0}});
    CHECK(rel_diff(s2_throughput(1.0, 3.0, 1.0, 1.0, 1.0, 1.0 - rev.compute_tc), rev.weighted_throughput) <= 1e-14);
    CHECK(rev.weighted_throughput < best.allocation.weighted_throughput);
}

TEST_CASE("exhaustive search edge cases") {
    CHECK(exhaustive_sequence_search(rate_scenario({1}, {2})).best.slot_to_device == std::vector<std::size_t>{0});
    const Scenario big = generate_scenario(SystemParams{}, 10, {1e5, 1e6}, 1);
    CHECK_THROWS_AS(exhaustive_sequence_search(big), ParameterError);
    CHECK_THROWS_AS(exhaustive_sequence_search(big, 4), ParameterError);
}

TEST_CASE("two-device formula matches solve_tdma on random equal-s scenarios") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Scenario sc = random_equal_s(rng, 2);
        sc.devices[0].weight_w = std::uniform_real_distribution<double>(0.1, 3.0)(rng);
        sc.devices[1].weight_w = std::uniform_real_distribution<double>(0.1, 3.0)(rng);
        const auto r = link_rates(sc);
        for (const OffloadingSequence& seq : {OffloadingSequence{{0, 1}}, OffloadingSequence{{1, 0}}}) {
            const TdmaAllocation a = solve_tdma(sc, seq);
            const std::size_t f = seq.slot_to_device[0];
            const std::size_t g = seq.slot_to_device[1];
            const double v = s2_throughput(5e5, r[f], r[g], sc.devices[f].weight_w, sc.devices[g].weight_w,
                                           1.0 - a.compute_tc);
            CHECK(rel_diff(v, a.weighted_throughput) <= 1e-12);
        }
    }
}

TEST_CASE("ascending rate is optimal for equal sensing rates") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 120; ++trial) {
        const Scenario sc = random_equal_s(rng, 2 + trial % 6);
        const TdmaAllocation fast = solve_tdma(sc);
        const ExhaustiveResult best = exhaustive_sequence_search(sc);
        CHECK(rel_diff(fast.weighted_throughput, best.allocation.weighted_throughput) <= 1e-12);
    }
}

TEST_CASE("benchmark sequences") {
    const Scenario sc = rate_scenario({5, 2, 9}, {1, 3, 2});
    CHECK(benchmark_sequence(sc, BenchmarkKind::descending_rate).slot_to_device == std::vector<std::size_t>{1, 2, 0});
    CHECK(benchmark_sequence(sc, BenchmarkKind::ascending_sensing).slot_to_device ==
          std::vector<std::size_t>{1, 0, 2});
    const auto a = benchmark_sequence(sc, BenchmarkKind::random, 42);
    CHECK(a == benchmark_sequence(sc, BenchmarkKind::random, 42));
    CHECK_NOTHROW(validate(a, 3));
}

TEST_CASE("random benchmark covers all permutations") {
    const Scenario sc = rate_scenario({1, 1, 1}, {1, 2, 3});
    std::vector<std::vector<std::size_t>> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto p = benchmark_sequence(sc, BenchmarkKind::random, seed).slot_to_device;
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("sequence validation") {
    CHECK_THROWS_AS(validate(OffloadingSequence{{0, 0}}, 2), ParameterError);
    CHECK_THROWS_AS(validate(OffloadingSequence{{0, 2}}, 2), ParameterError);
    CHECK_THROWS_AS(validate(OffloadingSequence{{0}}, 2), ParameterError);
    CHECK_THROWS_AS(solve_tdma(rate_scenario({1, 1}, {1, 2}), OffloadingSequence{{1, 1}}), ParameterError);
}
