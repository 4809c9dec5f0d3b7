#include "recur/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace recur {

double ReturnTimeRecord::exponent_ratio() const {
    return std::log(static_cast<double>(tau)) / (-std::log(mass));
}

RecurrenceSeries run_recurrence(const InvariantMeasure& mu,
                                const MassSchedule& schedule, OrbitStream& orbit,
                                std::uint64_t n,
                                const std::vector<std::uint64_t>& checkpoints) {
    if (n == 0) throw std::invalid_argument("orbit length must be >= 1");
    std::vector<std::uint64_t> cps = checkpoints;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.empty() || cps.back() != n) cps.push_back(n);
    if (cps.front() == 0) throw std::invalid_argument("checkpoint 0 is invalid");
    if (cps.back() > n) throw std::invalid_argument("checkpoint beyond orbit length");

    const double x0 = orbit.initial();
    RecurrenceSeries series;
    series.checkpoints = cps;

    std::uint64_t r_count = 0;
    CompensatedSum m_sum, s_sum;
    double last_mass = -1.0, last_radius = 0.0;
    std::size_t cp_idx = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const double m_k = schedule.mass(k);
        if (m_k != last_mass) {
            last_radius = mu.radius_for_mass(x0, m_k);
            last_mass = m_k;
        }
        const double point = orbit.next();
        const bool hit = std::abs(point - x0) < last_radius;
        r_count += hit ? 1 : 0;
        m_sum.add(m_k);
        if (hit) s_sum.add(1.0 / m_k);
        if (k == cps[cp_idx]) {
            series.r_count.push_back(r_count);
            series.m_sum.push_back(m_sum.value());
            series.s_sum.push_back(s_sum.value());
            ++cp_idx;
        }
    }
    return series;
}

ReturnTimeRecord return_time(const InvariantMeasure& mu, OrbitStream& orbit,
                             double r, std::uint64_t n_max) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    const double x0 = orbit.initial();
    ReturnTimeRecord rec;
    rec.radius = r;
    rec.mass = mu.ball_mass(x0, r);
    for (std::uint64_t k = 1; k <= n_max; ++k) {
        if (std::abs(orbit.next() - x0) < r) {
            rec.tau = k;
            return rec;
        }
    }
    rec.tau = n_max;
    rec.censored = true;
    return rec;
}

std::vector<ReturnTimeRecord> exponent_curve(const InvariantMeasure& mu,
                                             OrbitStream& orbit,
                                             const std::vector<double>& masses,
                                             std::uint64_t n_max) {
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (!(masses[i] > 0.0 && masses[i] < 1.0))
            throw std::invalid_argument("exponent-curve masses must lie in (0,1)");
        if (i > 0 && masses[i] >= masses[i - 1])
            throw std::invalid_argument("exponent-curve masses must decrease");
    }
    const double x0 = orbit.initial();
    std::vector<ReturnTimeRecord> records(masses.size());
    for (std::size_t j = 0; j < masses.size(); ++j) {
        records[j].radius = mu.radius_for_mass(x0, masses[j]);
        records[j].mass = mu.ball_mass(x0, records[j].radius);
    }
    // radii decrease with j, so hit times are found in order of j
    std::size_t next_unhit = 0;
    for (std::uint64_t k = 1; k <= n_max && next_unhit < records.size(); ++k) {
        const double d = std::abs(orbit.next() - x0);
        while (next_unhit < records.size() && d < records[next_unhit].radius) {
            records[next_unhit].tau = k;
            ++next_unhit;
        }
    }
    for (std::size_t j = next_unhit; j < records.size(); ++j) {
        records[j].tau = n_max;
        records[j].censored = true;
    }
    return records;
}

DimensionEstimate pointwise_dimension(const InvariantMeasure& mu, double x,
                                      const std::vector<double>& r_grid) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0))
            throw std::invalid_argument("dimension radii must lie in (0,1)");
        if (i > 0 && r_grid[i] >= r_grid[i - 1])
            throw std::invalid_argument("dimension radii must decrease");
    }
    DimensionEstimate est;
    est.ratios.reserve(r_grid.size());
    est.excluded.reserve(r_grid.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (double r : r_grid) {
        const double mass = mu.ball_mass(x, r);
        if (mass <= 0.0) {
            est.ratios.push_back(0.0);
            est.excluded.push_back(true);
            continue;
        }
        const double lx = std::log(r), ly = std::log(mass);
        const double ratio = ly / lx;
        est.ratios.push_back(ratio);
        est.excluded.push_back(false);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++used;
    }
    if (used == 0) throw std::invalid_argument("all dimension radii excluded");
    est.lower = lo;
    est.upper = hi;
    if (used >= 2) {
        const double n = static_cast<double>(used);
        est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    } else {
        est.slope = est.lower;
    }
    return est;
}

} // namespace recur
