#include <doctest.h>

#include <cmath>

#include "capplan/errors.hpp"
#include "capplan/stat_mux.hpp"
#include "capplan/traffic_sim.hpp"

using namespace capplan;

TEST_CASE("slot aggregate is an empty sum for zero sources or zero rate") {
    SplitMix64 g{1};
    CHECK(simulate_slot({0, 1e6, 1.0}, g) == 0.0);
    CHECK(simulate_slot({5, 0.0, 1.0}, g) == 0.0);
}

TEST_CASE("slot aggregate stays within [0, nR]") {
    SplitMix64 g{99};
    const SourceModel model{100, 1e6, 1.0};
    for (int i = 0; i < 1000; ++i) {
        const double a = simulate_slot(model, g);
        CHECK(a >= 0.0);
        CHECK(a <= 100e6);
    }
}

TEST_CASE("summary statistics agree with the CLT at 200k slots") {
    SimRun sim;
    sim.model = {100, 1e6, 1.0};
    sim.trials = 200000;
    sim.seed = 12345;
    const SimSummary s = run(sim);

    const double want_mean = 50e6;
    const double want_stddev = per_source_stddev(1e6) * 10.0; // S_max sqrt(n)
    CHECK(std::fabs(s.mean_bps - want_mean) <= 0.005 * want_mean);
    CHECK(std::fabs(s.stddev_bps - want_stddev) <= 0.02 * want_stddev);
    CHECK(s.max_observed_bps <= 100e6);
    CHECK(s.exceedance_rate == 0.0); // no capacity set
}

TEST_CASE("exceedance of c_stat validates the confidence level") {
    const CapacityEstimate est = stat_capacity({100, 1e6, 1.0}, QosSpec::make(0.01));

    SimRun sim;
    sim.model = {100, 1e6, 1.0};
    sim.trials = 200000;
    sim.seed = 12345;
    sim.capacity_bps = est.c_stat_bps;
    const SimSummary two = run(sim);
    CHECK(two.exceedance_rate >= 0.003);
    CHECK(two.exceedance_rate <= 0.007);

    const CapacityEstimate one_sided =
        stat_capacity({100, 1e6, 1.0}, QosSpec::make(0.01, Sidedness::one_sided));
    sim.capacity_bps = one_sided.c_stat_bps;
    const SimSummary one = run(sim);
    CHECK(one.exceedance_rate >= 0.008);
    CHECK(one.exceedance_rate <= 0.012);
}

TEST_CASE("exceedance extremes") {
    SimRun sim;
    sim.model = {10, 1e6, 1.0};
    sim.trials = 5000;
    sim.seed = 7;

    sim.capacity_bps = 10e6; // n R bounds the sum
    CHECK(run(sim).exceedance_rate == 0.0);

    sim.capacity_bps = 0.0; // positive sum almost surely
    CHECK(run(sim).exceedance_rate == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("same seed reproduces the summary bit for bit") {
    SimRun sim;
    sim.model = {37, 2.5e6, 0.5};
    sim.trials = 20000;
    sim.seed = 424242;
    sim.capacity_bps = 55e6;
    const SimSummary a = run(sim);
    const SimSummary b = run(sim);
    CHECK(a.mean_bps == b.mean_bps);
    CHECK(a.stddev_bps == b.stddev_bps);
    CHECK(a.exceedance_rate == b.exceedance_rate);
    CHECK(a.max_observed_bps == b.max_observed_bps);
}

TEST_CASE("different seeds agree within statistical tolerance") {
    SimRun sim;
    sim.model = {100, 1e6, 1.0};
    sim.trials = 50000;
    sim.seed = 1;
    const SimSummary a = run(sim);
    sim.seed = 2;
    const SimSummary b = run(sim);
    CHECK(std::fabs(a.mean_bps - b.mean_bps) < 0.005 * a.mean_bps);
    CHECK(std::fabs(a.stddev_bps - b.stddev_bps) < 0.05 * a.stddev_bps);
}

TEST_CASE("run rejects zero trials") {
    SimRun sim;
    sim.model = {1, 1e6, 1.0};
    sim.trials = 0;
    CHECK_THROWS_AS(run(sim), DomainError);
}
