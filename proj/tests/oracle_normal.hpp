#ifndef CAPPLAN_TESTS_ORACLE_NORMAL_HPP
#define CAPPLAN_TESTS_ORACLE_NORMAL_HPP

#include <cmath>

// Test-only inverse standard normal CDF: plain bisection on the erfc-based
// CDF. Slow and independent of the library's rational-approximation path.
namespace oracle {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double inverse_normal_cdf(double p) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle

#endif
