#include "recur/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace recur {

MassSchedule MassSchedule::log_power(double p, double a, bool clip) {
    if (!(a > 0.0)) throw std::invalid_argument("schedule scale must be positive");
    if (!(p >= 0.0)) throw std::invalid_argument("schedule exponent must be >= 0");
    MassSchedule s;
    s.p_ = p;
    s.a_ = a;
    s.clip_ = clip;
    return s;
}

MassSchedule MassSchedule::custom(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("empty custom schedule");
    for (double v : values)
        if (!(v > 0.0) || v > 1.0 || !std::isfinite(v))
            throw std::invalid_argument("custom masses must lie in (0,1]");
    MassSchedule s;
    s.custom_ = std::move(values);
    return s;
}

std::string MassSchedule::name() const {
    if (is_log_power())
        return "logpow(p=" + std::to_string(p_) + ",a=" + std::to_string(a_) + ")";
    return "custom(" + std::to_string(custom_.size()) + ")";
}

double MassSchedule::mass(std::uint64_t k) const {
    if (k == 0) throw std::invalid_argument("schedule index starts at 1");
    if (!custom_.empty()) {
        // a custom list repeats its last value past the end
        return custom_[std::min<std::uint64_t>(k - 1, custom_.size() - 1)];
    }
    if (k == 1) return 1.0;
    const double raw = a_ * std::pow(std::log(static_cast<double>(k)), p_) /
                       static_cast<double>(k);
    return clip_ ? std::min(1.0, raw) : raw;
}

double MassSchedule::partial_mass(std::uint64_t n) const {
    CompensatedSum sum; // M_0 = 0

    for (std::uint64_t k = 1; k <= n; ++k) sum.add(mass(k));
    return sum.value();
}

double MassSchedule::regularity_ratio(double rho, std::uint64_t k_lo,
                                      std::uint64_t k_hi) const {
    if (!(rho > 1.0)) throw std::invalid_argument("rho must exceed 1");
    if (k_lo > k_hi || k_lo == 0) throw std::invalid_argument("empty k range");
    double sup = 0.0;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
        const auto rk = static_cast<std::uint64_t>(rho * static_cast<double>(k));
        sup = std::max(sup, mass(k) / mass(rk));
    }
    return sup;
}

std::uint64_t MassSchedule::monotone_from(std::uint64_t horizon) const {
    if (!custom_.empty()) {
        std::uint64_t k0 = 1;
        for (std::size_t i = 1; i < custom_.size(); ++i)
            if (custom_[i] > custom_[i - 1]) k0 = i + 1;
        return k0;
    }
    // raw a (log k)^p / k peaks at k = e^p and is non-increasing afterwards;
    // clipping can only flatten, so scanning a little past the peak suffices
    const auto k_peak =
        static_cast<std::uint64_t>(std::ceil(std::exp(std::max(p_, 0.0)))) + 1;
    std::uint64_t last_ascent = 1;
    double prev = mass(1);
    for (std::uint64_t k = 2; k <= std::min<std::uint64_t>(horizon, k_peak + 4); ++k) {
        const double cur = mass(k);
        if (cur > prev) last_ascent = k;
        prev = cur;
    }
    return last_ascent;
}

HypothesisReport check_hypotheses(const MassSchedule& schedule, double epsilon,
                                  std::uint64_t k_lo, std::uint64_t k_hi,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const std::vector<double>& rho_grid) {
    HypothesisReport rep;
    rep.epsilon = epsilon;
    rep.rho_grid = rho_grid;
    rep.checkpoints = checkpoints;
    rep.monotone_from = schedule.monotone_from();

    double margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = std::max<std::uint64_t>(2, k_lo); k <= k_hi; ++k) {
        const double lk = std::log(static_cast<double>(k));
        margin = std::min(margin, schedule.mass(k) * static_cast<double>(k) /
                                      std::pow(lk, 4.0 + epsilon));
    }
    rep.lower_bound_margin = margin;
    rep.lower_bound_ok =
        margin >= 1.0 ||
        (schedule.is_log_power() && schedule.exponent() > 4.0 + epsilon - 1e-12);

    for (double rho : rho_grid)
        rep.regularity_sup.push_back(schedule.regularity_ratio(rho, k_lo, k_hi));

    // trend toward 1: sups non-increasing as rho decreases toward 1, and the
    // smallest-rho sup within twice its distance from 1
    bool trend = true;
    for (std::size_t i = 1; i < rho_grid.size(); ++i) {
        if (rho_grid[i] < rho_grid[i - 1] &&
            rep.regularity_sup[i] > rep.regularity_sup[i - 1] + 1e-9)
            trend = false;
    }
    if (!rho_grid.empty()) {
        const double rho_min = *std::min_element(rho_grid.begin(), rho_grid.end());
        const double sup_min = rep.regularity_sup[static_cast<std::size_t>(
            std::min_element(rho_grid.begin(), rho_grid.end()) - rho_grid.begin())];
        if (sup_min - 1.0 > 2.0 * (rho_min - 1.0) + 1e-9) trend = false;
    }
    rep.regularity_trend_ok = trend;
    rep.compliant = rep.lower_bound_ok && rep.regularity_trend_ok;

    CompensatedSum sum;
    std::uint64_t k = 1;
    for (std::uint64_t cp : checkpoints) {
        for (; k <= cp; ++k) sum.add(schedule.mass(k));
        rep.partial_mass_at.push_back(sum.value());
    }
    return rep;
}

} // namespace recur
