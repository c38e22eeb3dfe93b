#ifndef CAPPLAN_TRAFFIC_SIM_HPP
#define CAPPLAN_TRAFFIC_SIM_HPP

#include <cstdint>
#include <optional>

#include "capplan/rng.hpp"
#include "capplan/stat_mux.hpp"

namespace capplan {

// One Monte Carlo experiment: `trials` independent slots of the aggregated
// source population. Identical SimRun values produce bit-identical results.
struct SimRun {
    SourceModel model;
    std::uint64_t trials = 200000;
    std::uint64_t seed = 1;
    std::optional<double> capacity_bps; // exceedance measured against this
};

struct SimSummary {
    double mean_bps = 0.0;
    double stddev_bps = 0.0;
    double exceedance_rate = 0.0; // fraction of slots above capacity (0 if unset)
    double max_observed_bps = 0.0;
};

// Aggregate rate of one slot: the sum of n independent Uniform(0, R) draws.
// Advances the generator state.
double simulate_slot(const SourceModel& model, SplitMix64& rng);

// Runs all slots. Each trial draws from its own substream (see rng.hpp) and
// sums are reduced in fixed index order, so the result does not depend on
// the degree of internal parallelism.
SimSummary run(const SimRun& sim);

} // namespace capplan

#endif
