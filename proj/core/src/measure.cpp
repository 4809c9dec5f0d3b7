#include "recur/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace recur {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kLn2 = 0.6931471805599453094;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// asymptotic series, accurate to machine precision for z >= 16
double digamma_large(double z) {
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    return std::log(z) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

} // namespace

InvariantMeasure::InvariantMeasure(Repr repr, std::vector<double> density)
    : repr_(repr), density_(std::move(density)) {
    if (repr_ == Repr::GridDensity) {
        if (density_.size() < 2) throw std::invalid_argument("grid density needs >= 2 bins");
        const std::size_t n = density_.size();
        double mass = 0.0;
        cdf_at_edges_.resize(n + 1);
        cdf_at_edges_[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (density_[i] < 0.0) throw std::invalid_argument("negative density");
            mass += density_[i] / static_cast<double>(n);
            cdf_at_edges_[i + 1] = mass;
        }
        if (std::abs(mass - 1.0) > kMassTol)
            throw std::invalid_argument("grid density does not integrate to 1");
        cdf_at_edges_[n] = 1.0;
    }
}

InvariantMeasure InvariantMeasure::lebesgue() {
    return InvariantMeasure(Repr::AnalyticLebesgue, {});
}

InvariantMeasure InvariantMeasure::gauss_measure() {
    return InvariantMeasure(Repr::AnalyticGauss, {});
}

InvariantMeasure InvariantMeasure::grid_density(std::vector<double> density) {
    return InvariantMeasure(Repr::GridDensity, std::move(density));
}

std::string InvariantMeasure::name() const {
    switch (repr_) {
        case Repr::AnalyticLebesgue: return "lebesgue";
        case Repr::AnalyticGauss: return "gauss";
        case Repr::GridDensity: return "grid:" + std::to_string(density_.size());
    }
    return "?";
}

double InvariantMeasure::cdf(double x) const {
    x = clamp01(x);
    switch (repr_) {
        case Repr::AnalyticLebesgue:
            return x;
        case Repr::AnalyticGauss:
            return std::log1p(x) / kLn2;
        case Repr::GridDensity: {
            const std::size_t n = density_.size();
            const double t = x * static_cast<double>(n);
            std::size_t i = std::min(static_cast<std::size_t>(t), n - 1);
            return cdf_at_edges_[i] +
                   density_[i] * (x - static_cast<double>(i) / n);
        }
    }
    return 0.0;
}

double InvariantMeasure::density_at(double x) const {
    x = clamp01(x);
    switch (repr_) {
        case Repr::AnalyticLebesgue:
            return 1.0;
        case Repr::AnalyticGauss:
            return 1.0 / ((1.0 + x) * kLn2);
        case Repr::GridDensity: {
            const std::size_t n = density_.size();
            std::size_t i = std::min(static_cast<std::size_t>(x * n), n - 1);
            return density_[i];
        }
    }
    return 0.0;
}

double InvariantMeasure::ball_mass(double x, double r) const {
    if (r < 0.0) throw std::invalid_argument("negative radius");
    return cdf(std::min(x + r, 1.0)) - cdf(std::max(x - r, 0.0));
}

double InvariantMeasure::radius_for_mass(double x, double m) const {
    if (!(m > 0.0) || m > 1.0) throw std::invalid_argument("ball mass must lie in (0,1]");
    if (repr_ == Repr::AnalyticLebesgue) {
        const double slack = std::min(x, 1.0 - x); // mass available on the short side
        return m <= 2.0 * slack ? m / 2.0 : m - slack;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = ball_mass(x, mid);
        if (std::abs(g - m) <= kMassTol) return mid;
        (g < m ? lo : hi) = mid;
    }
    return hi;
}

double InvariantMeasure::quantile(double u) const {
    u = clamp01(u);
    switch (repr_) {
        case Repr::AnalyticLebesgue:
            return u;
        case Repr::AnalyticGauss:
            return std::exp2(u) - 1.0;
        case Repr::GridDensity: {
            const std::size_t n = density_.size();
            auto it = std::upper_bound(cdf_at_edges_.begin(), cdf_at_edges_.end(), u);
            std::size_t i = it == cdf_at_edges_.begin()
                                ? 0
                                : static_cast<std::size_t>(it - cdf_at_edges_.begin()) - 1;
            i = std::min(i, n - 1);
            const double rem = u - cdf_at_edges_[i];
            const double x = static_cast<double>(i) / n +
                             (density_[i] > 0.0 ? rem / density_[i] : 0.0);
            return clamp01(x);
        }
    }
    return 0.0;
}

FrostmanCertificate frostman_scan(const InvariantMeasure& mu, double s,
                                  std::size_t x_points, std::size_t r_levels) {
    if (!(s > 0.0)) throw std::invalid_argument("frostman exponent must be positive");
    FrostmanCertificate cert;
    cert.exponent = s;
    cert.per_level_max.assign(r_levels, 0.0);
    for (std::size_t l = 0; l < r_levels; ++l) {
        const double r = std::ldexp(1.0, -static_cast<int>(l + 1));
        double level_max = 0.0;
        for (std::size_t i = 0; i <= x_points; ++i) {
            const double x = static_cast<double>(i) / x_points;
            level_max = std::max(level_max, mu.ball_mass(x, r) / std::pow(r, s));
        }
        cert.per_level_max[l] = level_max;
        cert.constant = std::max(cert.constant, level_max);
    }
    // growth by more than 2x over the last three halvings means the scan
    // maxima are still climbing as r -> 0
    if (r_levels >= 4) {
        const double tail = cert.per_level_max[r_levels - 1];
        const double ref = cert.per_level_max[r_levels - 4];
        cert.unbounded = ref > 0.0 && tail / ref > 2.0;
    }
    return cert;
}

namespace {

// accumulate |[x_lo, x_hi]| into the dense row-stochastic matrix at column j,
// split across the input bins the interval overlaps
void deposit(std::vector<double>& mat, std::size_t n, double x_lo, double x_hi,
             std::size_t j) {
    if (!(x_hi > x_lo)) return;
    x_lo = std::max(0.0, x_lo);
    x_hi = std::min(1.0, x_hi);
    const double nd = static_cast<double>(n);
    std::size_t i_lo = std::min(static_cast<std::size_t>(x_lo * nd), n - 1);
    std::size_t i_hi = std::min(static_cast<std::size_t>(x_hi * nd), n - 1);
    for (std::size_t i = i_lo; i <= i_hi; ++i) {
        const double a = std::max(x_lo, static_cast<double>(i) / nd);
        const double b = std::min(x_hi, static_cast<double>(i + 1) / nd);
        if (b > a) mat[i * n + j] += (b - a) * nd; // / bin width
    }
}

std::vector<double> ulam_matrix(const IntervalMap& map, std::size_t n) {
    std::vector<double> mat(n * n, 0.0);
    const double nd = static_cast<double>(n);
    if (map.kind() == MapKind::Gauss) {
        // explicit branches m = 1 .. n-1; branches m >= n live inside bin 0
        // and are summed in closed form via the digamma telescope
        for (std::size_t m = 1; m < n; ++m) {
            const double md = static_cast<double>(m);
            for (std::size_t j = 0; j < n; ++j) {
                const double y_lo = static_cast<double>(j) / nd;
                const double y_hi = static_cast<double>(j + 1) / nd;
                deposit(mat, n, 1.0 / (md + y_hi), 1.0 / (md + y_lo), j);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double y_lo = static_cast<double>(j) / nd;
            const double y_hi = static_cast<double>(j + 1) / nd;
            mat[j] += nd * (digamma_large(nd + y_hi) - digamma_large(nd + y_lo));
        }
        return mat;
    }
    for (const auto& br : map.branches()) {
        const double img_lo = std::min(br.y_lo, br.y_hi);
        const double img_hi = std::max(br.y_lo, br.y_hi);
        for (std::size_t j = 0; j < n; ++j) {
            const double y_lo = std::max(static_cast<double>(j) / nd, img_lo);
            const double y_hi = std::min(static_cast<double>(j + 1) / nd, img_hi);
            if (!(y_hi > y_lo)) continue;
            double x_a = br.inverse(y_lo), x_b = br.inverse(y_hi);
            if (x_a > x_b) std::swap(x_a, x_b);
            deposit(mat, n, std::max(x_a, br.lo), std::min(x_b, br.hi), j);
        }
    }
    return mat;
}

} // namespace

InvariantMeasure ulam_measure(const IntervalMap& map, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("ulam needs >= 2 bins");
    if (!map.expanding()) throw std::invalid_argument("ulam requires an expanding map");
    const std::size_t n = bins;
    const std::vector<double> mat = ulam_matrix(map, n);

    std::vector<double> p(n, 1.0 / static_cast<double>(n)), q(n);
    const int max_iters = 100000;
    for (int it = 0; it < max_iters; ++it) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double pi = p[i];
            if (pi == 0.0) continue;
            const double* row = &mat[i * n];
            for (std::size_t j = 0; j < n; ++j) q[j] += pi * row[j];
        }
        const double total = std::accumulate(q.begin(), q.end(), 0.0);
        for (auto& v : q) v /= total;
        double l1 = 0.0; // on densities: n * sum|dp| * (1/n)
        for (std::size_t j = 0; j < n; ++j) l1 += std::abs(q[j] - p[j]);
        p.swap(q);
        if (l1 <= 1e-12) {
            std::vector<double> density(n);
            for (std::size_t j = 0; j < n; ++j) density[j] = p[j] * static_cast<double>(n);
            return InvariantMeasure::grid_density(std::move(density));
        }
    }
    throw std::runtime_error("ulam power iteration did not converge");
}

} // namespace recur
