#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "recur/maps.hpp"
#include "recur/measure.hpp"
#include "recur/recurrence.hpp"
#include "recur/schedule.hpp"

namespace recur {

// half-open integer interval (lo, hi]
struct IntInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool empty() const { return hi <= lo; }
    std::uint64_t length() const { return empty() ? 0 : hi - lo; }
    friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

// phi_k >= 1 with prefix sums Phi(n); Phi is strictly increasing, Phi(n) >= n.
class PhiAccumulator {
public:
    explicit PhiAccumulator(const std::vector<double>& phi);

    std::uint64_t size() const { return prefix_.size() - 1; }
    double phi_sum(std::uint64_t n) const { return prefix_[n]; } // Phi(n), n <= size

    // largest n <= size with Phi(n) < u; satisfies Phi(n_u) < u <= Phi(n_u + 1)
    // whenever u <= Phi(size). n_u(0) = 0.
    std::uint64_t n_u(std::uint64_t u) const;

    // sigma((u, v]) = (n_u, n_v]; may be empty, additive over adjacent
    // intervals and disjointness-preserving
    IntInterval sigma(IntInterval uv) const;

    // Phi over an index interval
    double phi_over(IntInterval idx) const {
        return idx.empty() ? 0.0 : prefix_[idx.hi] - prefix_[idx.lo];
    }

private:
    std::vector<double> prefix_; // prefix_[0] = 0
};

// greedy largest-power-of-two decomposition of (0, v] into intervals from
// J_r = union of the aligned dyadic families J_{r,s}; at most [log2 v] + 1 pieces
std::vector<IntInterval> dyadic_cover(std::uint64_t v, unsigned r);

struct PartitionMassReport {
    unsigned r = 0;
    double phi_at_n2r = 0.0;              // Phi(n_{2^r})
    std::vector<double> sublevel_sums;     // s = 0 .. r
    double total = 0.0;
    bool sublevels_equal = false;          // every sublevel sum == Phi(n_{2^r})
    bool sublevel_bound = false;           // Phi(n_{2^r}) < 2^r
    bool total_bound = false;              // total < (r+1) 2^r
    bool ok = false;
};

PartitionMassReport partition_mass_check(const PhiAccumulator& phi, unsigned r);

using OrbitFactory = std::function<std::unique_ptr<OrbitStream>(std::size_t)>;

struct VarianceCheck {
    std::uint64_t window_lo = 0; // (m, n]
    std::uint64_t window_hi = 0;
    double lhs = 0.0;            // ensemble estimate of the integrated square
    double rhs_no_c2 = 0.0;      // the double sum without the constant
    double ratio = 0.0;
    bool rejected = false;       // some estimated mu(E_k) was zero
    std::vector<double> mu_ek;   // per k in (m, n]
};

// Estimates mu(E_k) as the ensemble fraction of points returning at step k
// (radii per point); the same estimate enters both sides of the bound.
VarianceCheck variance_bound_check(const InvariantMeasure& mu,
                                   const MassSchedule& schedule,
                                   const OrbitFactory& orbits, IntInterval window,
                                   std::size_t ensemble);

struct CorrelationEstimate {
    std::vector<std::uint64_t> lags;
    std::vector<double> estimate;   // |cov(f o T^n, g)|
    std::vector<double> std_error;
    std::vector<bool> used_in_fit;  // estimate > 3 std errors
    double fitted_log_c = 0.0;
    double fitted_tau = 0.0;
    double fitted_tau_stderr = 0.0;
    bool fit_valid = false;
};

// Monte Carlo estimate of |int f o T^n g dmu - int f int g| on mu-distributed
// starts, with a log-linear fit of the decay rate over the usable lags.
CorrelationEstimate correlation_decay(const IntervalMap& map,
                                      const InvariantMeasure& mu,
                                      const std::function<double(double)>& f,
                                      const std::function<double(double)>& g,
                                      std::uint64_t n_max, std::size_t samples,
                                      std::uint64_t seed);

} // namespace recur
