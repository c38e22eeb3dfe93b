#include "capplan/traffic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "capplan/errors.hpp"

namespace capplan {

namespace {

// Indexed pairwise tree reduction. Fixed association order keeps summaries
// identical whether the per-trial values were produced serially or in
// parallel.
double tree_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n <= 512) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += v[i];
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

} // namespace

double simulate_slot(const SourceModel& model, SplitMix64& rng) {
    model.validate();
    double sum = 0.0;
    for (std::uint64_t i = 0; i < model.sources; ++i)
        sum += rng.next_unit() * model.peak_rate_bps;
    return sum;
}

SimSummary run(const SimRun& sim) {
    sim.model.validate();
    if (sim.trials < 1)
        throw DomainError("trials_range", "trial count must be >= 1");

    std::vector<double> agg(sim.trials);
    for (std::uint64_t t = 0; t < sim.trials; ++t) {
        SplitMix64 g{substream_seed(sim.seed, t)};
        agg[t] = simulate_slot(sim.model, g);
    }

    SimSummary out;
    const double n = static_cast<double>(sim.trials);
    out.mean_bps = tree_sum(agg, 0, agg.size()) / n;
    out.max_observed_bps = *std::max_element(agg.begin(), agg.end());

    if (sim.trials > 1) {
        std::vector<double> sq(sim.trials);
        for (std::uint64_t t = 0; t < sim.trials; ++t) {
            const double d = agg[t] - out.mean_bps;
            sq[t] = d * d;
        }
        out.stddev_bps = std::sqrt(tree_sum(sq, 0, sq.size()) / (n - 1.0));
    }

    if (sim.capacity_bps) {
        std::uint64_t over = 0;
        for (double a : agg)
            if (a > *sim.capacity_bps)
                ++over;
        out.exceedance_rate = static_cast<double>(over) / n;
    }
    return out;
}

} // namespace capplan
