#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "recur/rng.hpp"
#include "recur/sprindzuk.hpp"

using namespace recur;

namespace {

PhiAccumulator constant_phi(double c, std::size_t n) {
    return PhiAccumulator(std::vector<double>(n, c));
}

std::vector<double> random_phi(CounterRng& rng, std::size_t n) {
    // dyadic entries in [1,4] keep all prefix sums exact in doubles
    std::vector<double> phi(n);
    for (auto& v : phi)
        v = 1.0 + static_cast<double>(rng.next_u64() % (3u << 20)) * 0x1.0p-20;
    return phi;
}

} // namespace

TEST_CASE("n_u on hand-checked sequences") {
    CHECK(constant_phi(1.0, 8).n_u(5) == 4);
    CHECK(constant_phi(2.0, 8).n_u(3) == 1);
    CHECK(PhiAccumulator({1.0, 3.0, 1.0}).n_u(4) == 1);
    CHECK(constant_phi(1.0, 8).n_u(0) == 0);
}

TEST_CASE("sigma on hand-checked sequences") {
    CHECK(constant_phi(1.0, 8).sigma({2, 5}) == IntInterval{1, 4});
    // Phi = (2,4,...): n_3 = n_4 = 1, so (3,4] collapses
    CHECK(constant_phi(2.0, 8).sigma({3, 4}).empty());
    // Phi = (1,4,5): n_1 = 0, n_4 = 1 by the sandwich, so (1,4] -> (0,1]
    CHECK(PhiAccumulator({1.0, 3.0, 1.0}).sigma({1, 4}) == IntInterval{0, 1});
}

TEST_CASE("sandwich property on random sequences") {
    CounterRng rng(5150, 0);
    for (int t = 0; t < 20; ++t) {
        const auto phi = PhiAccumulator(random_phi(rng, 512 + rng.next_u64() % 1536));
        const double top = phi.phi_sum(phi.size());
        for (std::uint64_t u = 1; u <= static_cast<std::uint64_t>(top); ++u) {
            const std::uint64_t n = phi.n_u(u);
            CHECK(phi.phi_sum(n) < static_cast<double>(u));
            REQUIRE(n + 1 <= phi.size());
            CHECK(static_cast<double>(u) <= phi.phi_sum(n + 1));
        }
    }
}

TEST_CASE("sigma additivity and disjointness on random sequences") {
    CounterRng rng(5151, 0);
    for (int t = 0; t < 50; ++t) {
        const auto phi = PhiAccumulator(random_phi(rng, 1024));
        const auto top = static_cast<std::uint64_t>(phi.phi_sum(phi.size()));
        const std::uint64_t u = rng.next_u64() % (top - 2);
        const std::uint64_t mid = u + 1 + rng.next_u64() % (top - 1 - u);
        const std::uint64_t v = mid + 1 + rng.next_u64() % (top - mid);
        const auto s1 = phi.sigma({u, mid});
        const auto s2 = phi.sigma({mid, v});
        const auto s = phi.sigma({u, v});
        CHECK(s1.hi == s2.lo); // adjacency preserved
        CHECK(s.lo == s1.lo);
        CHECK(s.hi == s2.hi);
        CHECK(phi.phi_over(s) == phi.phi_over(s1) + phi.phi_over(s2));
    }
}

TEST_CASE("dyadic cover on hand-checked inputs") {
    // 5 = 4 + 1 -> (0,4], (4,5]
    auto c = dyadic_cover(5, 3);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == IntInterval{0, 4});
    CHECK(c[1] == IntInterval{4, 5});
    // 8 is a single aligned block at level 3
    c = dyadic_cover(8, 3);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == IntInterval{0, 8});
    // 7 = 4 + 2 + 1
    c = dyadic_cover(7, 3);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == IntInterval{0, 4});
    CHECK(c[1] == IntInterval{4, 6});
    CHECK(c[2] == IntInterval{6, 7});
}

TEST_CASE("dyadic cover properties, exhaustive to 2^10") {
    for (std::uint64_t v = 1; v <= 1024; ++v) {
        unsigned r = 0;
        while ((1ull << r) < v) ++r;
        const auto cover = dyadic_cover(v, r);
        // count bound [log2 v] + 1
        unsigned log2v = 0;
        while ((2ull << log2v) <= v) ++log2v;
        CHECK(cover.size() <= log2v + 1);
        // disjoint, adjacent, exact union of (0, v]
        std::uint64_t cursor = 0;
        for (const auto& iv : cover) {
            CHECK(iv.lo == cursor);
            CHECK(iv.hi > iv.lo);
            // aligned: length 2^s divides lo
            const std::uint64_t len = iv.length();
            CHECK((len & (len - 1)) == 0);
            CHECK(iv.lo % len == 0);
            cursor = iv.hi;
        }
        CHECK(cursor == v);
    }
    CHECK_THROWS(dyadic_cover(9, 3)); // v exceeds 2^r
    CHECK_THROWS(dyadic_cover(0, 3));
}

TEST_CASE("partition mass identity on hand-checked sequences") {
    {
        const auto rep = partition_mass_check(constant_phi(1.0, 16), 3);
        CHECK(rep.phi_at_n2r == 7.0); // Phi(n_8) = Phi(7)
        for (double s : rep.sublevel_sums) CHECK(s == 7.0);
        CHECK(rep.total == 28.0);
        CHECK(rep.ok);
    }
    {
        const auto rep = partition_mass_check(constant_phi(2.0, 16), 2);
        CHECK(rep.phi_at_n2r == 2.0); // n_4 = 1
        for (double s : rep.sublevel_sums) CHECK(s == 2.0);
        CHECK(rep.ok);
    }
    {
        const auto rep = partition_mass_check(constant_phi(1.0, 4), 0);
        CHECK(rep.phi_at_n2r == 0.0); // n_1 = 0
        CHECK(rep.total == 0.0);
        CHECK(rep.ok);
    }
}

TEST_CASE("partition mass identity on random sequences") {
    CounterRng rng(5152, 0);
    for (int t = 0; t < 10; ++t) {
        const auto phi = PhiAccumulator(random_phi(rng, 4096));
        for (unsigned r = 0; r <= 10; ++r) {
            const auto rep = partition_mass_check(phi, r);
            CHECK(rep.sublevels_equal);
            CHECK(rep.sublevel_bound);
            CHECK(rep.total_bound);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("variance bound on a fully clipped schedule is zero") {
    const auto leb = InvariantMeasure::lebesgue();
    OrbitFactory factory = [](std::size_t p) -> std::unique_ptr<OrbitStream> {
        return std::make_unique<BitstreamOrbitStream>(BitstreamOrbit(77, p, 64));
    };
    const auto chk = variance_bound_check(leb, MassSchedule::custom({1.0}), factory,
                                          {0, 64}, 128);
    CHECK_FALSE(chk.rejected);
    CHECK(chk.lhs == 0.0); // every E_k is the whole space
    for (double m : chk.mu_ek) CHECK(m == 1.0);
}

TEST_CASE("variance bound on the theorem schedule over a short window") {
    const auto leb = InvariantMeasure::lebesgue();
    OrbitFactory factory = [](std::size_t p) -> std::unique_ptr<OrbitStream> {
        return std::make_unique<BitstreamOrbitStream>(BitstreamOrbit(78, p, 512));
    };
    const auto chk = variance_bound_check(leb, MassSchedule::log_power(5.0), factory,
                                          {0, 500}, 2000);
    CHECK_FALSE(chk.rejected);
    CHECK(chk.lhs > 0.0);
    CHECK(chk.rhs_no_c2 > 0.0);
    CHECK(chk.ratio == doctest::Approx(chk.lhs / chk.rhs_no_c2).epsilon(1e-12));
    // mu(E_2) should land near m_2 = 0.0801 (3500/sqrt(2000) margin)
    CHECK(chk.mu_ek[1] == doctest::Approx(0.0801).epsilon(0.35));
    // clipped indices are certain events
    CHECK(chk.mu_ek[3] == 1.0);
}

TEST_CASE("correlation of the centered coordinate under doubling") {
    // quadrature oracle: int (T^n x - 1/2)(x - 1/2) dx = 2^-n / 12, computed
    // by Simpson on each linear piece of T^n
    for (int n = 0; n <= 4; ++n) {
        const std::uint64_t pieces = 1ull << n;
        double integral = 0.0;
        for (std::uint64_t i = 0; i < pieces; ++i) {
            const double lo = static_cast<double>(i) / pieces;
            const double hi = static_cast<double>(i + 1) / pieces;
            auto f = [&](double x) {
                const double tx = static_cast<double>(pieces) * (x - lo);
                return (tx - 0.5) * (x - 0.5);
            };
            const double h = hi - lo;
            integral += (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi)) * h / 6.0;
        }
        CHECK(integral == doctest::Approx(std::exp2(-n) / 12.0).epsilon(1e-12));
    }

    auto centered = [](double x) { return x - 0.5; };
    const auto est = correlation_decay(IntervalMap::doubling(),
                                       InvariantMeasure::lebesgue(), centered,
                                       centered, 6, 1000000, 4242);
    REQUIRE(est.lags.size() == 7);
    for (std::size_t i = 0; i < est.lags.size(); ++i) {
        const double oracle = std::exp2(-static_cast<double>(est.lags[i])) / 12.0;
        CHECK(std::abs(est.estimate[i] - oracle) <= 3.0 * est.std_error[i]);
    }
    CHECK(est.fit_valid);
    CHECK(est.fitted_tau == doctest::Approx(std::log(2.0)).epsilon(0.15));
}
