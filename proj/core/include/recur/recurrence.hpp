#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "recur/maps.hpp"
#include "recur/measure.hpp"
#include "recur/schedule.hpp"

namespace recur {

// Single-consumer stream of orbit points T^1 x, T^2 x, ...
class OrbitStream {
public:
    virtual ~OrbitStream() = default;
    virtual double initial() const = 0;
    virtual double next() = 0;
};

class FloatOrbitStream final : public OrbitStream {
public:
    FloatOrbitStream(IntervalMap map, double x0)
        : orbit_(std::move(map), x0), x0_(x0) {}
    double initial() const override { return x0_; }
    double next() override { return orbit_.next(); }

private:
    Float64Orbit orbit_;
    double x0_;
};

class BitstreamOrbitStream final : public OrbitStream {
public:
    explicit BitstreamOrbitStream(BitstreamOrbit orbit)
        : orbit_(std::move(orbit)) {}
    double initial() const override { return orbit_.point_at(0); }
    double next() override { return orbit_.point_at(++k_); }

private:
    BitstreamOrbit orbit_;
    std::uint64_t k_ = 0;
};

// Per-orbit counters at checkpoints: R_n recurrence counts, M_n mass partial
// sums, S_n indicator/mass weighted counts.
struct RecurrenceSeries {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::uint64_t> r_count;
    std::vector<double> m_sum;
    std::vector<double> s_sum;

    double ratio(std::size_t i) const {
        return static_cast<double>(r_count[i]) / m_sum[i];
    }
    double s_over_n(std::size_t i) const {
        return s_sum[i] / static_cast<double>(checkpoints[i]);
    }
};

struct ReturnTimeRecord {
    double radius = 0.0;
    double mass = 0.0;
    std::uint64_t tau = 0;   // search cap when censored
    bool censored = false;

    // log tau / (-log mu(B)); finite when mass < 1
    double exponent_ratio() const;
};

struct DimensionEstimate {
    double lower = 0.0; // min over the grid of log mu(B(x,r)) / log r
    double upper = 0.0; // max over the grid
    double slope = 0.0; // least-squares slope of log mu(B) against log r
    std::vector<double> ratios;
    std::vector<bool> excluded; // mu(B) = 0 at that r
};

// One pass over the orbit. The ball is centred at x0 for the whole run;
// r_k inverts the schedule mass at x0 and is cached between steps.
RecurrenceSeries run_recurrence(const InvariantMeasure& mu,
                                const MassSchedule& schedule, OrbitStream& orbit,
                                std::uint64_t n,
                                const std::vector<std::uint64_t>& checkpoints);

// first k <= n_max with d(T^k x, x) < r; censored results are data, not errors
ReturnTimeRecord return_time(const InvariantMeasure& mu, OrbitStream& orbit,
                             double r, std::uint64_t n_max);

// return times for a decreasing mass grid, all read off one orbit pass
std::vector<ReturnTimeRecord> exponent_curve(const InvariantMeasure& mu,
                                             OrbitStream& orbit,
                                             const std::vector<double>& masses,
                                             std::uint64_t n_max);

DimensionEstimate pointwise_dimension(const InvariantMeasure& mu, double x,
                                      const std::vector<double>& r_grid);

} // namespace recur
