#include <doctest.h>

#include <cmath>
#include <vector>

#include "recur/measure.hpp"
#include "recur/rng.hpp"

using namespace recur;

namespace {

// composite Simpson quadrature of a density over [a,b]
template <typename F>
double simpson(F f, double a, double b, int panels) {
    double h = (b - a) / panels, s = 0.0;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h;
        s += (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1)) * h / 6.0;
    }
    return s;
}

double gauss_density(double x) { return 1.0 / ((1.0 + x) * std::log(2.0)); }

} // namespace

TEST_CASE("ball mass, analytic measures") {
    const auto leb = InvariantMeasure::lebesgue();
    CHECK(leb.ball_mass(0.5, 0.05) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(leb.ball_mass(0.95, 0.1) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(leb.ball_mass(0.0, 0.25) == doctest::Approx(0.25).epsilon(1e-14));

    const auto gm = InvariantMeasure::gauss_measure();
    const double expected = std::log(1.6 / 1.4) / std::log(2.0);
    CHECK(gm.ball_mass(0.5, 0.1) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(0.19264).epsilon(1e-4));
    // quadrature oracle for the same ball
    CHECK(gm.ball_mass(0.5, 0.1) ==
          doctest::Approx(simpson(gauss_density, 0.4, 0.6, 64)).epsilon(1e-10));
    CHECK(gm.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("radius for mass, closed form and bisection") {
    const auto leb = InvariantMeasure::lebesgue();
    CHECK(leb.radius_for_mass(0.5, 0.1) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(leb.radius_for_mass(0.0, 0.1) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(leb.radius_for_mass(0.9, 0.3) == doctest::Approx(0.2).epsilon(1e-12));

    const auto gm = InvariantMeasure::gauss_measure();
    const double m = std::log(1.6 / 1.4) / std::log(2.0);
    CHECK(gm.radius_for_mass(0.5, m) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("mass and radius are mutually inverse on random inputs") {
    std::vector<double> grid(16);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.53125 + static_cast<double>(i) / 16.0; // integrates to 1
    const InvariantMeasure measures[] = {InvariantMeasure::lebesgue(),
                                         InvariantMeasure::gauss_measure(),
                                         InvariantMeasure::grid_density(grid)};
    CounterRng rng(2024, 0);
    for (const auto& mu : measures) {
        double prev_r = 0.0;
        for (int t = 0; t < 200; ++t) {
            const double x = rng.next_double();
            const double m = 1e-6 + 0.999 * rng.next_double();
            const double r = mu.radius_for_mass(x, m);
            CHECK(std::abs(mu.ball_mass(x, r) - m) <= 2e-12);
            (void)prev_r;
        }
        // monotone in the requested mass
        const double x = 0.3;
        prev_r = 0.0;
        for (double m = 0.05; m < 1.0; m += 0.05) {
            const double r = mu.radius_for_mass(x, m);
            CHECK(r >= prev_r);
            prev_r = r;
        }
    }
}

TEST_CASE("quantile inverts the cdf") {
    const auto gm = InvariantMeasure::gauss_measure();
    CHECK(gm.quantile(0.5) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    std::vector<double> grid = {2.0, 0.5, 0.5, 1.0};
    const auto gd = InvariantMeasure::grid_density(grid);
    for (double u = 0.0; u <= 1.0; u += 0.01)
        CHECK(gd.cdf(gd.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
}

TEST_CASE("ulam density of the doubling map on two bins") {
    const auto mu = ulam_measure(IntervalMap::doubling(), 2);
    REQUIRE(mu.density_bins().size() == 2);
    CHECK(mu.density_bins()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.density_bins()[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ulam density of the skewed map is uniform") {
    const auto mu = ulam_measure(IntervalMap::skewed_full_branch(1.0 / 3.0), 4096);
    double l1 = 0.0;
    for (double d : mu.density_bins()) l1 += std::abs(d - 1.0) / 4096.0;
    CHECK(l1 < 1e-3);
}

TEST_CASE("ulam density of the gauss map approaches the gauss density") {
    // transfer-operator oracle: h(x) = sum_m h(1/(x+m)) / (x+m)^2 holds for
    // the gauss density (tail handled with an integral bound)
    for (double x : {0.1, 0.37, 0.9}) {
        double lhs = 0.0;
        const int m_cut = 1000;
        for (int m = 1; m <= m_cut; ++m) {
            const double y = 1.0 / (x + m);
            lhs += gauss_density(y) * y * y;
        }
        // exact telescoping tail: terms are (1/ln2)(1/(x+m) - 1/(x+m+1))
        lhs += 1.0 / ((x + m_cut + 1) * std::log(2.0));
        CHECK(lhs == doctest::Approx(gauss_density(x)).epsilon(1e-12));
    }

    std::vector<std::size_t> sizes = {256, 512, 1024};
    double prev = 1e9;
    for (std::size_t n : sizes) {
        const auto mu = ulam_measure(IntervalMap::gauss(), n);
        double l1 = 0.0;
        const auto& d = mu.density_bins();
        for (std::size_t i = 0; i < n; ++i) {
            // compare bin averages, not midpoints
            const double lo = static_cast<double>(i) / n;
            const double hi = static_cast<double>(i + 1) / n;
            const double avg = simpson(gauss_density, lo, hi, 2) * n;
            l1 += std::abs(d[i] - avg) / n;
        }
        CHECK(l1 < prev + 1e-12); // error shrinks with refinement
        prev = l1;
    }
    CHECK(prev < 2e-2);
}

TEST_CASE("ulam rejects non-expanding custom maps") {
    const auto weak = IntervalMap::custom_piecewise_linear(
        {{0.0, 0.5, 0.0, 0.4}, {0.5, 1.0, 0.4, 1.0}});
    CHECK_THROWS(ulam_measure(weak, 64));
}

TEST_CASE("frostman scan certificates") {
    const auto leb = frostman_scan(InvariantMeasure::lebesgue(), 1.0);
    CHECK_FALSE(leb.unbounded);
    CHECK(leb.constant == doctest::Approx(2.0).epsilon(1e-9));

    const auto too_steep = frostman_scan(InvariantMeasure::lebesgue(), 2.0);
    CHECK(too_steep.unbounded);

    const auto gm = frostman_scan(InvariantMeasure::gauss_measure(), 1.0);
    CHECK_FALSE(gm.unbounded);
    CHECK(gm.constant == doctest::Approx(2.0 / std::log(2.0)).epsilon(0.01));
}
