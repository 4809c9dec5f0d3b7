#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recur/maps.hpp"

namespace recur {

// A probability measure on [0,1] given by a density: the two analytic
// built-ins (Lebesgue and the Gauss measure 1/((1+x) ln 2)) or a uniform-bin
// grid density from the Ulam construction. Atomic measures are out of scope;
// they would break the exact mass/radius inversion.
class InvariantMeasure {
public:
    enum class Repr { AnalyticLebesgue, AnalyticGauss, GridDensity };

    static InvariantMeasure lebesgue();
    static InvariantMeasure gauss_measure();
    static InvariantMeasure grid_density(std::vector<double> density);

    Repr repr() const { return repr_; }
    std::string name() const;
    const std::vector<double>& density_bins() const { return density_; }

    double cdf(double x) const;
    double density_at(double x) const;

    // mu([max(x-r,0), min(x+r,1)]); balls truncated to [0,1]
    double ball_mass(double x, double r) const;

    // smallest r with ball_mass(x, r) >= m, mass tolerance 1e-12.
    // Closed form for Lebesgue, bisection otherwise.
    double radius_for_mass(double x, double m) const;

    // inverse CDF, used for mu-distributed sampling
    double quantile(double u) const;

private:
    InvariantMeasure(Repr repr, std::vector<double> density);

    Repr repr_;
    std::vector<double> density_; // GridDensity only
    std::vector<double> cdf_at_edges_; // GridDensity only, size N+1
};

// max over a scan grid of mu(B(x,r)) / r^s, with the per-level maxima kept
// so an unbounded trend (Frostman failure) is visible.
struct FrostmanCertificate {
    double exponent = 0.0;
    double constant = 0.0;
    std::vector<double> per_level_max; // levels r = 2^-1 .. 2^-L
    bool unbounded = false;            // maxima still growing at the finest levels
};

FrostmanCertificate frostman_scan(const InvariantMeasure& mu, double s,
                                  std::size_t x_points = 512,
                                  std::size_t r_levels = 20);

// Stationary density of the Ulam discretization of the transfer operator,
// with matrix entries from analytic branch preimage lengths. Power
// iteration runs until the successive L1 change is <= 1e-12.
InvariantMeasure ulam_measure(const IntervalMap& map, std::size_t bins);

} // namespace recur
