#include "capplan/stat_mux.hpp"

#include <cmath>

#include "capplan/errors.hpp"

namespace capplan {

void SourceModel::validate() const {
    if (peak_rate_bps < 0 || !std::isfinite(peak_rate_bps))
        throw DomainError("rate_negative", "peak rate must be >= 0 bits/s");
    if (!(burst_period_s > 0))
        throw DomainError("period_nonpositive", "burst period must be > 0 s");
}

namespace {

// Acklam's rational approximation of the inverse standard normal CDF.
// Raw accuracy ~1.15e-9 relative; the caller refines it.
double inverse_normal_cdf_acklam(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.141592653589793238462643383279503);
}

double inverse_normal_cdf(double p) {
    double z = inverse_normal_cdf_acklam(p);
    // One Halley refinement step against the erfc-based CDF.
    const double e = normal_cdf(z) - p;
    const double u = e / normal_pdf(z);
    z -= u / (1.0 + 0.5 * z * u);
    return z;
}

} // namespace

double quantile_factor(double epsilon, Sidedness convention) {
    if (!(epsilon > 0.0) || epsilon > 1.0 || !std::isfinite(epsilon))
        throw DomainError("epsilon_range", "epsilon must lie in (0, 1]");
    if (convention == Sidedness::two_sided) {
        if (epsilon == 1.0)
            return 0.0; // median of the standard normal
        return inverse_normal_cdf(1.0 - epsilon / 2.0);
    }
    if (epsilon == 1.0)
        throw DomainError("epsilon_range", "one-sided epsilon must lie in (0, 1)");
    return inverse_normal_cdf(1.0 - epsilon);
}

QosSpec QosSpec::make(double epsilon, Sidedness convention) {
    const double z = quantile_factor(epsilon, convention);
    if (z < 0)
        throw DomainError("quantile_negative",
                          "epsilon yields a negative quantile factor under this convention");
    return QosSpec{epsilon, z, convention};
}

bool QosSpec::consistent(double tol) const {
    return std::fabs(quantile_factor(epsilon, convention) - c_epsilon) <= tol;
}

double per_source_stddev(double peak_rate_bps) {
    if (peak_rate_bps < 0 || !std::isfinite(peak_rate_bps))
        throw DomainError("rate_negative", "peak rate must be >= 0 bits/s");
    return peak_rate_bps / (2.0 * std::sqrt(3.0));
}

CapacityEstimate stat_capacity(const SourceModel& model, const QosSpec& qos) {
    model.validate();
    if (!qos.consistent())
        throw DomainError("qos_inconsistent", "stored c_epsilon does not match epsilon");
    if (model.sources == 0)
        return CapacityEstimate{};

    const double n = static_cast<double>(model.sources);
    const double r = model.peak_rate_bps;
    CapacityEstimate est;
    est.c_max_bps = n * r;
    est.c_mean_bps = (r / 2.0) * n;
    est.s_max_bps = per_source_stddev(r);
    est.c_stat_bps = est.c_mean_bps + qos.c_epsilon * est.s_max_bps * std::sqrt(n);
    return est;
}

} // namespace capplan
