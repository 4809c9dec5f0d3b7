#include "recur/sprindzuk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "recur/rng.hpp"

namespace recur {

PhiAccumulator::PhiAccumulator(const std::vector<double>& phi) {
    if (phi.empty()) throw std::invalid_argument("empty phi sequence");
    prefix_.reserve(phi.size() + 1);
    prefix_.push_back(0.0);
    for (double p : phi) {
        if (!(p >= 1.0)) throw std::invalid_argument("phi entries must be >= 1");
        prefix_.push_back(prefix_.back() + p);
    }
}

std::uint64_t PhiAccumulator::n_u(std::uint64_t u) const {
    // first index with Phi(n) >= u, minus one
    const auto it = std::lower_bound(prefix_.begin(), prefix_.end(),
                                     static_cast<double>(u));
    if (it == prefix_.end()) return size();
    return static_cast<std::uint64_t>(it - prefix_.begin()) - (u == 0 ? 0 : 1);
}

IntInterval PhiAccumulator::sigma(IntInterval uv) const {
    if (uv.empty()) return {0, 0};
    return {n_u(uv.lo), n_u(uv.hi)};
}

std::vector<IntInterval> dyadic_cover(std::uint64_t v, unsigned r) {
    if (v == 0) throw std::invalid_argument("dyadic cover needs v >= 1");
    if (r >= 64 || v > (std::uint64_t{1} << r))
        throw std::invalid_argument("v exceeds 2^r");
    std::vector<IntInterval> cover;
    std::uint64_t start = 0;
    for (int s = static_cast<int>(r); s >= 0; --s) {
        const std::uint64_t len = std::uint64_t{1} << s;
        if (v & len) {
            cover.push_back({start, start + len});
            start += len;
        }
    }
    return cover;
}

PartitionMassReport partition_mass_check(const PhiAccumulator& phi, unsigned r) {
    if (r >= 63) throw std::invalid_argument("r too large");
    PartitionMassReport rep;
    rep.r = r;
    const std::uint64_t two_r = std::uint64_t{1} << r;
    rep.phi_at_n2r = phi.phi_sum(phi.n_u(two_r));
    rep.sublevels_equal = true;
    double total = 0.0;
    for (unsigned s = 0; s <= r; ++s) {
        const std::uint64_t len = std::uint64_t{1} << s;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < (two_r >> s); ++i)
            sum += phi.phi_over(phi.sigma({i * len, (i + 1) * len}));
        rep.sublevel_sums.push_back(sum);
        if (sum != rep.phi_at_n2r) rep.sublevels_equal = false;
        total += sum;
    }
    rep.total = total;
    rep.sublevel_bound = rep.phi_at_n2r < static_cast<double>(two_r);
    rep.total_bound = total < static_cast<double>((r + 1) * two_r);
    rep.ok = rep.sublevels_equal && rep.sublevel_bound && rep.total_bound;
    return rep;
}

VarianceCheck variance_bound_check(const InvariantMeasure& mu,
                                   const MassSchedule& schedule,
                                   const OrbitFactory& orbits, IntInterval window,
                                   std::size_t ensemble) {
    if (window.empty()) throw std::invalid_argument("empty window");
    if (ensemble == 0) throw std::invalid_argument("empty ensemble");
    const std::uint64_t m = window.lo, n = window.hi;
    const std::size_t width = static_cast<std::size_t>(n - m);

    VarianceCheck check;
    check.window_lo = m;
    check.window_hi = n;

    // indicator table: hits[p * width + (k - m - 1)]
    std::vector<std::uint8_t> hits(ensemble * width, 0);
    for (std::size_t p = 0; p < ensemble; ++p) {
        auto orbit = orbits(p);
        const double x0 = orbit->initial();
        double last_mass = -1.0, radius = 0.0;
        for (std::uint64_t k = 1; k <= n; ++k) {
            const double m_k = schedule.mass(k);
            if (m_k != last_mass) {
                radius = mu.radius_for_mass(x0, m_k);
                last_mass = m_k;
            }
            const double point = orbit->next();
            if (k > m && std::abs(point - x0) < radius)
                hits[p * width + static_cast<std::size_t>(k - m - 1)] = 1;
        }
    }

    check.mu_ek.assign(width, 0.0);
    for (std::size_t p = 0; p < ensemble; ++p)
        for (std::size_t i = 0; i < width; ++i)
            check.mu_ek[i] += hits[p * width + i];
    for (auto& v : check.mu_ek) v /= static_cast<double>(ensemble);
    if (std::any_of(check.mu_ek.begin(), check.mu_ek.end(),
                    [](double v) { return v == 0.0; })) {
        check.rejected = true;
        return check;
    }

    CompensatedSum lhs;
    for (std::size_t p = 0; p < ensemble; ++p) {
        CompensatedSum dev;
        for (std::size_t i = 0; i < width; ++i)
            dev.add(hits[p * width + i] / check.mu_ek[i] - 1.0);
        lhs.add(dev.value() * dev.value());
    }
    check.lhs = lhs.value() / static_cast<double>(ensemble);

    CompensatedSum cube_sum, log_sum;
    for (std::size_t i = 0; i < width; ++i) {
        const auto k = static_cast<double>(m + i + 1);
        cube_sum.add(1.0 / (k * k * k * check.mu_ek[i]));
        log_sum.add(std::log(std::max(k, 2.0)) / check.mu_ek[i]);
    }
    check.rhs_no_c2 = cube_sum.value() * log_sum.value();
    check.ratio = check.lhs / check.rhs_no_c2;
    return check;
}

CorrelationEstimate correlation_decay(const IntervalMap& map,
                                      const InvariantMeasure& mu,
                                      const std::function<double(double)>& f,
                                      const std::function<double(double)>& g,
                                      std::uint64_t n_max, std::size_t samples,
                                      std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("need >= 2 samples");
    const std::size_t lag_count = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> sum_h(lag_count, 0.0), sum_h2(lag_count, 0.0),
        sum_f(lag_count, 0.0);
    double sum_g = 0.0;

    CounterRng rng(seed, 0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = mu.quantile(rng.next_double());
        const double gx = g(x);
        sum_g += gx;
        double y = x;
        for (std::size_t l = 0; l < lag_count; ++l) {
            const double fy = f(y);
            const double h = fy * gx;
            sum_f[l] += fy;
            sum_h[l] += h;
            sum_h2[l] += h * h;
            if (l + 1 < lag_count) y = map.evaluate(y);
        }
    }

    const double s = static_cast<double>(samples);
    const double mean_g = sum_g / s;
    CorrelationEstimate est;
    for (std::size_t l = 0; l < lag_count; ++l) {
        const double mean_h = sum_h[l] / s;
        const double cov = mean_h - (sum_f[l] / s) * mean_g;
        const double var_h = std::max(0.0, sum_h2[l] / s - mean_h * mean_h);
        est.lags.push_back(l);
        est.estimate.push_back(std::abs(cov));
        est.std_error.push_back(std::sqrt(var_h / s));
    }

    // log-linear fit over lags where the estimate clears the noise floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (std::size_t l = 0; l < lag_count; ++l) {
        const bool use = est.estimate[l] > 3.0 * est.std_error[l];
        est.used_in_fit.push_back(use);
        if (!use) continue;
        const double x = static_cast<double>(l), y = std::log(est.estimate[l]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++used;
    }
    if (used >= 3) {
        const double n = static_cast<double>(used);
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        double ss_res = 0.0;
        for (std::size_t l = 0; l < lag_count; ++l) {
            if (!est.used_in_fit[l]) continue;
            const double resid =
                std::log(est.estimate[l]) - (intercept + slope * static_cast<double>(l));
            ss_res += resid * resid;
        }
        const double sxx_c = sxx - sx * sx / n;
        est.fitted_log_c = intercept;
        est.fitted_tau = -slope;
        est.fitted_tau_stderr =
            used > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx_c) : 0.0;
        est.fit_valid = true;
    }
    return est;
}

} // namespace recur
