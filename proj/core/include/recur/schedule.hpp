#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace recur {

// Kahan-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// The prescribed ball-mass sequence (m_k). The log-power family is
// m_k = min(1, a (log k)^p / k) with m_1 := 1 (the raw formula gives 0,
// which is not a valid ball mass; one term never affects limits).
class MassSchedule {
public:
    static MassSchedule log_power(double p, double a = 1.0, bool clip = true);
    static MassSchedule custom(std::vector<double> values);

    bool is_log_power() const { return custom_.empty(); }
    double exponent() const { return p_; }
    double scale() const { return a_; }
    bool clip() const { return clip_; }
    const std::vector<double>& values() const { return custom_; }
    std::string name() const;

    double mass(std::uint64_t k) const;

    // M_n = sum_{k<=n} m_k, compensated
    double partial_mass(std::uint64_t n) const;

    // sup over k in [k_lo, k_hi] of m_k / m_[rho k]
    double regularity_ratio(double rho, std::uint64_t k_lo, std::uint64_t k_hi) const;

    // smallest k0 (within the declared horizon for Custom) such that m_k is
    // non-increasing for all k >= k0
    std::uint64_t monotone_from(std::uint64_t horizon = 1u << 20) const;

private:
    MassSchedule() = default;

    double p_ = 0.0;
    double a_ = 1.0;
    bool clip_ = true;
    std::vector<double> custom_;
};

// Finite-proxy check of the theorem's hypotheses on (m_k): the lower-bound
// margin min_k m_k k / (log k)^{4+eps}, the regularity scan over a rho grid,
// and the divergence proxy M_n at checkpoints.
struct HypothesisReport {
    double epsilon = 1.0;
    double lower_bound_margin = 0.0;
    std::vector<double> rho_grid;
    std::vector<double> regularity_sup; // per rho, same order
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> partial_mass_at; // M_n per checkpoint
    std::uint64_t monotone_from = 1;
    bool lower_bound_ok = false;
    bool regularity_trend_ok = false;
    bool compliant = false;
};

HypothesisReport check_hypotheses(const MassSchedule& schedule, double epsilon,
                                  std::uint64_t k_lo, std::uint64_t k_hi,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const std::vector<double>& rho_grid = {1.5, 1.2, 1.1,
                                                                         1.05, 1.01});

} // namespace recur
