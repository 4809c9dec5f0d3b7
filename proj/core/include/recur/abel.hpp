#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace recur {

// (a_k) decreasing non-negative with divergent sum, (x_k) non-negative;
// generators are 1-indexed.
struct SequencePair {
    std::function<double(std::uint64_t)> a;
    std::function<double(std::uint64_t)> x;
};

// (1/n) sum_{k<=n} x_k / a_k, compensated
double cesaro_ratio(const SequencePair& pair, std::uint64_t n);

// sum_{k<=n} x_k / sum_{k<=n} a_k, compensated
double sum_ratio(const SequencePair& pair, std::uint64_t n);

// the same quotient over a tail window (n1, n]
double tail_sum_ratio(const SequencePair& pair, std::uint64_t n1, std::uint64_t n);

struct TransferCheckReport {
    bool applicable = false;   // hypothesis gate: monotone, positive, divergence proxy
    std::string gate_failure;
    bool premise_holds = false; // |cesaro_ratio(n) - 1| <= delta on the upper half grid
    double delta = 0.0;
    double measured_delta = 0.0;
    std::uint64_t n1 = 0;       // tail-window start (grid midpoint)
    double sum_ratio_full = 0.0;
    double tail_ratio = 0.0;
    std::vector<double> rhos;
    std::vector<double> c_rhos;
    std::vector<double> upper_bounds; // rho c_rho (1 + d + 4d/(rho-1))
    std::vector<double> lower_bounds; // (rho c_rho)^-1 (1 - d - 4d/(rho-1))
    double envelope = 0.0;            // min over rho of max(upper-1, 1-lower)
    bool conclusion_holds = false;    // |tail_ratio - 1| <= envelope
    bool satisfied = false;           // !premise_holds || conclusion_holds
};

// Finite-proxy form of the summation lemma: a verified Cesaro premise within
// delta forces the tail-window sum ratio into an explicit envelope assembled
// from the rho scan. The envelope applies to the window (n1, N] because the
// head of a slowly divergent series distorts the full-range quotient at any
// finite N.
TransferCheckReport lemma_transfer_check(const SequencePair& pair,
                                         const std::vector<std::uint64_t>& grid,
                                         double delta,
                                         const std::vector<double>& rhos = {1.01, 1.05,
                                                                            1.1});

} // namespace recur
