#include <doctest.h>

#include <cmath>

#include "capplan/errors.hpp"
#include "capplan/stat_mux.hpp"
#include "oracle_normal.hpp"

using namespace capplan;

TEST_CASE("quantile factor matches the normal-law table value") {
    // eps = 0.01, two-sided: the 99% confidence factor.
    CHECK(quantile_factor(0.01) == doctest::Approx(2.575829303549).epsilon(1e-10));
}

TEST_CASE("quantile factor trivial and derived points") {
    CHECK(quantile_factor(1.0, Sidedness::two_sided) == 0.0);
    // Frozen from the bisection oracle below.
    CHECK(quantile_factor(0.05, Sidedness::two_sided) == doctest::Approx(1.959964).epsilon(1e-5));
    CHECK(quantile_factor(0.05, Sidedness::two_sided) ==
          doctest::Approx(1.959963984540054).epsilon(1e-9));
}

TEST_CASE("quantile factor agrees with the bisection oracle across the domain") {
    for (double eps : {1e-6, 1e-4, 0.001, 0.01, 0.02, 0.05, 0.1, 0.25, 0.5, 0.9, 0.999}) {
        const double want_two = oracle::inverse_normal_cdf(1.0 - eps / 2.0);
        CHECK(std::fabs(quantile_factor(eps, Sidedness::two_sided) - want_two) < 1e-8);
        const double want_one = oracle::inverse_normal_cdf(1.0 - eps);
        CHECK(std::fabs(quantile_factor(eps, Sidedness::one_sided) - want_one) < 1e-8);
    }
}

TEST_CASE("quantile factor rejects epsilon outside (0, 1]") {
    CHECK_THROWS_AS(quantile_factor(0.0), DomainError);
    CHECK_THROWS_AS(quantile_factor(-0.1), DomainError);
    CHECK_THROWS_AS(quantile_factor(1.1), DomainError);
    CHECK_THROWS_AS(quantile_factor(1.0, Sidedness::one_sided), DomainError);
}

TEST_CASE("per-source standard deviation") {
    // R / (2 sqrt 3); rounding the divisor to 3.46 would give 289,017 instead.
    CHECK(std::fabs(per_source_stddev(1e6) - 288675.13) < 0.01);
    CHECK(per_source_stddev(0.0) == 0.0);
    CHECK(per_source_stddev(2.0 * std::sqrt(3.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(per_source_stddev(-1.0), DomainError);
}

TEST_CASE("worked example: 100 sources at 1 Mbit/s, 99% confidence") {
    const SourceModel model{100, 1e6, 1.0};
    const QosSpec qos = QosSpec::make(0.01);
    const CapacityEstimate est = stat_capacity(model, qos);

    CHECK(est.c_max_bps == 100e6);
    CHECK(est.c_mean_bps == 50e6);
    CHECK(est.s_max_bps == doctest::Approx(288675.134594813).epsilon(1e-12));
    // Hand rounding C_eps to 2.58 and S_max to 289,017 yields 57.5 Mbit/s;
    // full-precision constants give ~57.44.
    CHECK(est.c_stat_bps > 57.3e6);
    CHECK(est.c_stat_bps < 57.6e6);
    CHECK(est.c_stat_bps ==
          doctest::Approx(50e6 + qos.c_epsilon * est.s_max_bps * 10.0).epsilon(1e-15));
}

TEST_CASE("no sources yields an all-zero estimate") {
    const CapacityEstimate est = stat_capacity({0, 1e6, 1.0}, QosSpec::make(0.01));
    CHECK(est.c_max_bps == 0.0);
    CHECK(est.c_mean_bps == 0.0);
    CHECK(est.s_max_bps == 0.0);
    CHECK(est.c_stat_bps == 0.0);
}

TEST_CASE("epsilon = 1 leaves only the mean term") {
    const CapacityEstimate est = stat_capacity({1, 1e6, 1.0}, QosSpec::make(1.0));
    CHECK(est.c_stat_bps == 500000.0);
}

TEST_CASE("capacity estimate invariants") {
    const QosSpec qos = QosSpec::make(0.01);
    for (std::uint64_t n : {27u, 40u, 100u, 1000u, 100000u}) {
        const CapacityEstimate est = stat_capacity({n, 1e6, 1.0}, qos);
        CHECK(est.c_mean_bps == est.c_max_bps / 2.0);
        CHECK(est.c_mean_bps <= est.c_stat_bps);
        CHECK(est.c_stat_bps <= est.c_max_bps);
    }
}

TEST_CASE("c_stat is monotone in n and R, antitone in epsilon") {
    const QosSpec qos = QosSpec::make(0.01);
    double prev = 0.0;
    for (std::uint64_t n = 1; n <= 400; n += 7) {
        const double c = stat_capacity({n, 1e6, 1.0}, qos).c_stat_bps;
        CHECK(c > prev);
        prev = c;
    }
    prev = 0.0;
    for (double r = 1e5; r <= 1e7; r *= 1.7) {
        const double c = stat_capacity({50, r, 1.0}, qos).c_stat_bps;
        CHECK(c > prev);
        prev = c;
    }
    double prev_eps = 1e18;
    for (double eps : {0.001, 0.01, 0.05, 0.2, 0.5, 1.0}) {
        const double c = stat_capacity({50, 1e6, 1.0}, QosSpec::make(eps)).c_stat_bps;
        CHECK(c < prev_eps);
        prev_eps = c;
    }
}

TEST_CASE("scaling R by k scales every field by k") {
    const QosSpec qos = QosSpec::make(0.02);
    for (double k : {0.25, 2.0, 3.7, 1000.0}) {
        const CapacityEstimate base = stat_capacity({64, 1e6, 1.0}, qos);
        const CapacityEstimate scaled = stat_capacity({64, k * 1e6, 1.0}, qos);
        CHECK(scaled.c_max_bps == doctest::Approx(k * base.c_max_bps).epsilon(1e-12));
        CHECK(scaled.c_mean_bps == doctest::Approx(k * base.c_mean_bps).epsilon(1e-12));
        CHECK(scaled.s_max_bps == doctest::Approx(k * base.s_max_bps).epsilon(1e-12));
        CHECK(scaled.c_stat_bps == doctest::Approx(k * base.c_stat_bps).epsilon(1e-12));
    }
}

TEST_CASE("safety margin is sub-additive: c_stat(2n) < 2 c_stat(n)") {
    const QosSpec qos = QosSpec::make(0.01);
    for (std::uint64_t n = 1; n <= 5000; n = n * 3 + 1) {
        const double c1 = stat_capacity({n, 1e6, 1.0}, qos).c_stat_bps;
        const double c2 = stat_capacity({2 * n, 1e6, 1.0}, qos).c_stat_bps;
        CHECK(c2 < 2.0 * c1);
    }
}

TEST_CASE("QosSpec recomputation stays consistent") {
    for (double eps : {0.001, 0.01, 0.05, 0.5}) {
        CHECK(QosSpec::make(eps).consistent(1e-6));
        CHECK(QosSpec::make(eps, Sidedness::one_sided).consistent(1e-6));
    }
    QosSpec tampered = QosSpec::make(0.01);
    tampered.c_epsilon += 1e-3;
    CHECK_FALSE(tampered.consistent(1e-6));
    CHECK_THROWS_AS(stat_capacity({10, 1e6, 1.0}, tampered), DomainError);
}

TEST_CASE("source model validation") {
    CHECK_THROWS_AS(stat_capacity({10, -1.0, 1.0}, QosSpec::make(0.01)), DomainError);
    CHECK_THROWS_AS(stat_capacity({10, 1e6, 0.0}, QosSpec::make(0.01)), DomainError);
}
