#ifndef CAPPLAN_STAT_MUX_HPP
#define CAPPLAN_STAT_MUX_HPP

#include <cstdint>

namespace capplan {

// Population of unsynchronized on/off traffic sources sharing a link.
// Each source bursts at up to peak_rate_bps for burst_period_s, then goes
// silent for the same period. The burst period has no effect on the
// closed-form capacity; it sets the slot granularity of the simulator.
struct SourceModel {
    std::uint64_t sources = 0;      // n
    double peak_rate_bps = 0.0;     // R, >= 0
    double burst_period_s = 1.0;    // T, > 0

    void validate() const;
};

enum class Sidedness { two_sided, one_sided };

// Confidence parameter and its derived standard-normal quantile factor.
struct QosSpec {
    double epsilon = 0.01;
    double c_epsilon = 0.0;
    Sidedness convention = Sidedness::two_sided;

    // Computes c_epsilon from epsilon under the chosen convention.
    static QosSpec make(double epsilon, Sidedness convention = Sidedness::two_sided);

    // Recomputes the quantile and compares against the stored value.
    bool consistent(double tol = 1e-6) const;
};

struct CapacityEstimate {
    double c_max_bps = 0.0;   // n * R (all sources on)
    double c_mean_bps = 0.0;  // (R/2) * n
    double s_max_bps = 0.0;   // R / (2 * sqrt(3)), per-source stddev
    double c_stat_bps = 0.0;  // (R/2) * n + c_eps * s_max * sqrt(n)
};

// Inverse standard normal CDF quantile factor.
// Two-sided: z with Phi(z) = 1 - eps/2; one-sided: Phi(z) = 1 - eps.
// Acklam's rational approximation refined by one Halley step on erfc,
// giving better than 1e-12 absolute error over the domain.
double quantile_factor(double epsilon, Sidedness convention = Sidedness::two_sided);

// Standard deviation of one source's rate: R / (2 * sqrt(3)).
double per_source_stddev(double peak_rate_bps);

// Statistical over-subscription capacity of the aggregated population.
CapacityEstimate stat_capacity(const SourceModel& model, const QosSpec& qos);

} // namespace capplan

#endif
