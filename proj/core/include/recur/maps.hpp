#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "recur/rng.hpp"

namespace recur {

enum class MapKind {
    Doubling,
    Tent,
    SkewedFullBranch,
    Gauss,
    CustomPiecewiseLinear,
};

// One strictly monotone linear piece y = y_lo + slope * (x - lo) on [lo, hi].
struct LinearBranch {
    double lo;
    double hi;
    double y_lo;
    double y_hi;

    double slope() const { return (y_hi - y_lo) / (hi - lo); }
    double eval(double x) const { return y_lo + slope() * (x - lo); }
    // inverse of the extended line; caller clips to the domain
    double inverse(double y) const { return lo + (y - y_lo) / slope(); }
};

// A piecewise-monotone self-map of [0,1]. The linear kinds carry explicit
// branch lists; the Gauss map has countably many branches and is handled
// analytically where branch data is needed.
class IntervalMap {
public:
    static IntervalMap doubling();
    static IntervalMap tent();
    static IntervalMap skewed_full_branch(double p);
    static IntervalMap gauss();
    static IntervalMap custom_piecewise_linear(std::vector<LinearBranch> branches);

    // Parse "doubling", "tent", "gauss", "skewed:<p>".
    static IntervalMap from_name(const std::string& name);

    MapKind kind() const { return kind_; }
    double partition_point() const { return p_; }
    const std::vector<LinearBranch>& branches() const { return branches_; }
    std::string name() const;

    // T(x); right-continuous at interior branch boundaries, T(1) by the
    // last branch's limit (Gauss: T(1) = 0, T(0) = 0 by convention).
    double evaluate(double x) const;

    bool expanding() const;

private:
    IntervalMap(MapKind kind, double p, std::vector<LinearBranch> branches);
    void validate_branches() const;

    MapKind kind_;
    double p_ = 0.0; // SkewedFullBranch partition point
    std::vector<LinearBranch> branches_;
};

enum class OrbitEngine { Float64, ExactBitstream };

// Floating-point orbit of any map. Round-off acts as small noise; for the
// doubling map this engine collapses to 0 within 53 steps, so use the
// bitstream engine there.
class Float64Orbit {
public:
    Float64Orbit(IntervalMap map, double x0) : map_(std::move(map)), x_(x0) {
        if (!(x0 >= 0.0 && x0 <= 1.0))
            throw std::invalid_argument("orbit start outside [0,1]");
    }

    double current() const { return x_; }
    double next() { return x_ = map_.evaluate(x_); }

private:
    IntervalMap map_;
    double x_;
};

// Exact orbit of the doubling map. The point is a seeded pseudo-random bit
// sequence of length n + 64; T^k x is read off as the 64-bit fractional
// value at bit offset k, so iteration is an exact shift and the orbit is
// Lebesgue-distributed.
class BitstreamOrbit {
public:
    // capacity = largest k for which point_at(k) may be asked
    BitstreamOrbit(std::uint64_t seed, std::uint64_t stream, std::uint64_t capacity);
    explicit BitstreamOrbit(std::vector<std::uint64_t> words);

    std::uint64_t capacity() const { return capacity_; }

    std::uint64_t bits_at(std::uint64_t k) const {
        const std::uint64_t q = k >> 6, r = k & 63;
        if (r == 0) return words_[q];
        return (words_[q] << r) | (words_[q + 1] >> (64 - r));
    }

    // T^k x as a double in [0,1); k = 0 is the initial point
    double point_at(std::uint64_t k) const {
        return static_cast<double>(bits_at(k)) * 0x1.0p-64;
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t capacity_;
};

} // namespace recur
