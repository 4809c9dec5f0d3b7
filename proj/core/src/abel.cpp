#include "recur/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "recur/schedule.hpp"

namespace recur {

double cesaro_ratio(const SequencePair& pair, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    CompensatedSum sum;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const double a = pair.a(k);
        if (!(a > 0.0)) throw std::invalid_argument("a_k must be positive");
        sum.add(pair.x(k) / a);
    }
    return sum.value() / static_cast<double>(n);
}

double sum_ratio(const SequencePair& pair, std::uint64_t n) {
    return tail_sum_ratio(pair, 0, n);
}

double tail_sum_ratio(const SequencePair& pair, std::uint64_t n1, std::uint64_t n) {
    if (n <= n1) throw std::invalid_argument("empty window");
    CompensatedSum sx, sa;
    for (std::uint64_t k = n1 + 1; k <= n; ++k) {
        sx.add(pair.x(k));
        sa.add(pair.a(k));
    }
    if (!(sa.value() > 0.0)) throw std::invalid_argument("sum of a_k not positive");
    return sx.value() / sa.value();
}

TransferCheckReport lemma_transfer_check(const SequencePair& pair,
                                         const std::vector<std::uint64_t>& grid,
                                         double delta,
                                         const std::vector<double>& rhos) {
    if (grid.size() < 2) throw std::invalid_argument("grid needs >= 2 points");
    std::vector<std::uint64_t> g = grid;
    std::sort(g.begin(), g.end());
    const std::uint64_t n_max = g.back();

    TransferCheckReport rep;
    rep.delta = delta;
    rep.n1 = g[g.size() / 2];
    rep.satisfied = true; // vacuous until the premise is evaluated

    // hypothesis gate
    double prev = pair.a(1);
    for (std::uint64_t k = 2; k <= n_max; ++k) {
        const double cur = pair.a(k);
        if (cur < 0.0 || cur > prev + 1e-15) {
            rep.gate_failure = "a_k not non-increasing at k=" + std::to_string(k);
            return rep;
        }
        prev = cur;
    }
    if (!(pair.a(n_max) > 0.0)) {
        rep.gate_failure = "a_k vanishes on the tested range";
        return rep;
    }
    {
        // divergence proxy: the upper half must still carry mass
        CompensatedSum head, tail;
        for (std::uint64_t k = 1; k <= n_max / 2; ++k) head.add(pair.a(k));
        for (std::uint64_t k = n_max / 2 + 1; k <= n_max; ++k) tail.add(pair.a(k));
        const double share = tail.value() / (head.value() + tail.value());
        if (share < 1.0 / (4.0 * std::log2(static_cast<double>(n_max)))) {
            rep.gate_failure = "divergence proxy failed (summable-looking a_k)";
            return rep;
        }
    }
    rep.applicable = true;

    double measured = 0.0;
    for (std::size_t i = g.size() / 2; i < g.size(); ++i)
        measured = std::max(measured, std::abs(cesaro_ratio(pair, g[i]) - 1.0));
    rep.measured_delta = measured;
    rep.premise_holds = measured <= delta;

    rep.sum_ratio_full = sum_ratio(pair, n_max);
    rep.tail_ratio = tail_sum_ratio(pair, rep.n1, n_max);

    double envelope = std::numeric_limits<double>::infinity();
    for (double rho : rhos) {
        double c_rho = 1.0;
        for (std::uint64_t k = rep.n1;
             static_cast<std::uint64_t>(rho * static_cast<double>(k)) <= n_max; ++k) {
            const auto rk = static_cast<std::uint64_t>(rho * static_cast<double>(k));
            c_rho = std::max(c_rho, pair.a(k) / pair.a(rk));
        }
        const double spread = delta + 4.0 * delta / (rho - 1.0);
        const double hi = rho * c_rho * (1.0 + spread);
        const double lo = std::max(0.0, (1.0 - spread) / (rho * c_rho));
        rep.rhos.push_back(rho);
        rep.c_rhos.push_back(c_rho);
        rep.upper_bounds.push_back(hi);
        rep.lower_bounds.push_back(lo);
        envelope = std::min(envelope, std::max(hi - 1.0, 1.0 - lo));
    }
    rep.envelope = envelope;
    rep.conclusion_holds = std::abs(rep.tail_ratio - 1.0) <= envelope;
    rep.satisfied = !rep.premise_holds || rep.conclusion_holds;
    return rep;
}

} // namespace recur
