#include <doctest.h>

#include <cmath>
#include <vector>

#include "recur/schedule.hpp"

using namespace recur;

TEST_CASE("log-power masses at pinned indices") {
    const auto s = MassSchedule::log_power(5.0);
    CHECK(s.mass(1) == 1.0);
    CHECK(s.mass(2) == doctest::Approx(std::pow(std::log(2.0), 5.0) / 2.0).epsilon(1e-14));
    CHECK(s.mass(2) == doctest::Approx(0.0801).epsilon(1e-3));
    CHECK(s.mass(100000) == 1.0); // (log 1e5)^5 / 1e5 ~ 2.02, clipped
    CHECK(s.mass(1000000) == doctest::Approx(0.5033).epsilon(1e-3));

    const auto h = MassSchedule::log_power(0.0);
    CHECK(h.mass(7) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));

    const auto raw = MassSchedule::log_power(5.0, 1.0, false);
    CHECK(raw.mass(100000) == doctest::Approx(2.0230).epsilon(1e-3));
}

TEST_CASE("partial mass") {
    const auto ones = MassSchedule::custom(std::vector<double>(10, 1.0));
    CHECK(ones.partial_mass(10) == 10.0);

    // harmonic sum oracle: H_n = log n + gamma + 1/(2n) - ...
    const auto h = MassSchedule::log_power(0.0);
    const double expected = std::log(1e6) + 0.5772156649015329 + 0.5e-6;
    CHECK(h.partial_mass(1000000) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(h.partial_mass(1000000) == doctest::Approx(14.3927).epsilon(1e-4));
}

TEST_CASE("partial mass increments are exactly the masses") {
    // dyadic values keep every partial sum exact
    std::vector<double> vals;
    for (int k = 0; k < 64; ++k) vals.push_back(std::ldexp(1.0, -(k % 11) - 1));
    const auto s = MassSchedule::custom(vals);
    for (std::uint64_t n = 1; n <= vals.size(); ++n)
        CHECK(s.partial_mass(n) - s.partial_mass(n - 1) == s.mass(n));
}

TEST_CASE("regularity ratios") {
    const auto h = MassSchedule::log_power(0.0);
    const double r_h = h.regularity_ratio(1.1, 1000, 1000000);
    CHECK(r_h >= 1.0);
    CHECK(r_h <= 1.1 + 1e-3);

    const auto s = MassSchedule::log_power(5.0);
    const double r_s = s.regularity_ratio(1.05, 1000, 1000000);
    CHECK(r_s >= 1.0);
    CHECK(r_s <= 1.06);

    const auto c = MassSchedule::custom(std::vector<double>(100, 0.25));
    CHECK(c.regularity_ratio(1.5, 1, 60) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("monotone tail start") {
    const auto s = MassSchedule::log_power(5.0);
    const std::uint64_t k0 = s.monotone_from();
    // non-increasing from k0 on, sampled densely near k0 and sparsely beyond
    for (std::uint64_t k = k0; k < k0 + 5000; ++k) CHECK(s.mass(k + 1) <= s.mass(k));
    for (std::uint64_t k = k0; k < (1u << 20); k += 9973)
        CHECK(s.mass(k + 1) <= s.mass(k));
    if (k0 > 2) CHECK(s.mass(k0) > s.mass(k0 - 1)); // minimal k0

    CHECK(MassSchedule::log_power(0.0).monotone_from() == 1);
}

TEST_CASE("hypothesis report for theorem-compliant and borderline schedules") {
    const std::vector<std::uint64_t> cps = {1000, 10000, 100000, 1000000};

    const auto good = check_hypotheses(MassSchedule::log_power(5.0), 1.0, 1000,
                                       1000000, cps);
    CHECK(good.lower_bound_ok);
    CHECK(good.regularity_trend_ok);
    CHECK(good.compliant);
    CHECK(good.partial_mass_at.back() > 100000.0); // divergence proxy

    // m_k = 1/k misses the (log k)^{4+eps} lower bound
    const auto bad = check_hypotheses(MassSchedule::log_power(0.0), 1.0, 1000,
                                      1000000, cps);
    CHECK_FALSE(bad.lower_bound_ok);
    CHECK_FALSE(bad.compliant);

    // regularity sups shrink toward 1 as rho does
    for (std::size_t i = 1; i < good.regularity_sup.size(); ++i)
        CHECK(good.regularity_sup[i] <= good.regularity_sup[i - 1] + 1e-12);
}

TEST_CASE("schedule guards") {
    CHECK_THROWS(MassSchedule::log_power(-1.0));
    CHECK_THROWS(MassSchedule::custom({0.5, 1.5}));
    CHECK_THROWS(MassSchedule::custom({}));
    const auto c = MassSchedule::custom({0.5, 0.25});
    CHECK(c.mass(3) == 0.25); // the last value repeats past the horizon
    CHECK_THROWS(c.mass(0));
}
