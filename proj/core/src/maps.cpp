#include "recur/maps.hpp"

#include <cmath>
#include <cstdlib>

namespace recur {

IntervalMap::IntervalMap(MapKind kind, double p, std::vector<LinearBranch> branches)
    : kind_(kind), p_(p), branches_(std::move(branches)) {
    if (kind_ != MapKind::Gauss) validate_branches();
}

void IntervalMap::validate_branches() const {
    if (branches_.empty()) throw std::invalid_argument("map has no branches");
    double cursor = 0.0;
    for (const auto& b : branches_) {
        if (std::abs(b.lo - cursor) > 1e-12)
            throw std::invalid_argument("branch domains do not partition [0,1]");
        if (!(b.hi > b.lo)) throw std::invalid_argument("empty branch domain");
        if (b.y_lo == b.y_hi) throw std::invalid_argument("branch not strictly monotone");
        if (b.y_lo < -1e-12 || b.y_lo > 1 + 1e-12 || b.y_hi < -1e-12 || b.y_hi > 1 + 1e-12)
            throw std::invalid_argument("branch image leaves [0,1]");
        cursor = b.hi;
    }
    if (std::abs(cursor - 1.0) > 1e-12)
        throw std::invalid_argument("branch domains do not cover [0,1]");
}

IntervalMap IntervalMap::doubling() {
    return IntervalMap(MapKind::Doubling, 0.0,
                       {{0.0, 0.5, 0.0, 1.0}, {0.5, 1.0, 0.0, 1.0}});
}

IntervalMap IntervalMap::tent() {
    return IntervalMap(MapKind::Tent, 0.0,
                       {{0.0, 0.5, 0.0, 1.0}, {0.5, 1.0, 1.0, 0.0}});
}

IntervalMap IntervalMap::skewed_full_branch(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("partition point must lie in (0,1)");
    return IntervalMap(MapKind::SkewedFullBranch, p,
                       {{0.0, p, 0.0, 1.0}, {p, 1.0, 0.0, 1.0}});
}

IntervalMap IntervalMap::gauss() { return IntervalMap(MapKind::Gauss, 0.0, {}); }

IntervalMap IntervalMap::custom_piecewise_linear(std::vector<LinearBranch> branches) {
    return IntervalMap(MapKind::CustomPiecewiseLinear, 0.0, std::move(branches));
}

IntervalMap IntervalMap::from_name(const std::string& name) {
    if (name == "doubling") return doubling();
    if (name == "tent") return tent();
    if (name == "gauss") return gauss();
    if (name.rfind("skewed:", 0) == 0)
        return skewed_full_branch(std::strtod(name.c_str() + 7, nullptr));
    throw std::invalid_argument("unknown map name: " + name);
}

std::string IntervalMap::name() const {
    switch (kind_) {
        case MapKind::Doubling: return "doubling";
        case MapKind::Tent: return "tent";
        case MapKind::SkewedFullBranch: return "skewed:" + std::to_string(p_);
        case MapKind::Gauss: return "gauss";
        case MapKind::CustomPiecewiseLinear: return "custom";
    }
    return "?";
}

double IntervalMap::evaluate(double x) const {
    if (kind_ == MapKind::Gauss) {
        if (x <= 0.0) return 0.0;
        const double y = 1.0 / x;
        return y - std::floor(y);
    }
    // interior ties go to the right branch; x = 1 maps by the last branch
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
        if (x < branches_[i].hi) return branches_[i].eval(x);
    return branches_.back().eval(x);
}

bool IntervalMap::expanding() const {
    if (kind_ == MapKind::Gauss) return true; // |T'| = 1/x^2 > 1 except at x = 1
    for (const auto& b : branches_)
        if (std::abs(b.slope()) <= 1.0) return false;
    return true;
}

BitstreamOrbit::BitstreamOrbit(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t capacity)
    : capacity_(capacity) {
    const std::uint64_t nbits = capacity + 64;
    const std::uint64_t nwords = (nbits + 63) / 64 + 1;
    CounterRng rng(seed, stream);
    words_.resize(nwords);
    for (std::uint64_t i = 0; i < nwords; ++i) words_[i] = rng.word_at(i);
}

BitstreamOrbit::BitstreamOrbit(std::vector<std::uint64_t> words)
    : words_(std::move(words)) {
    if (words_.size() < 2) throw std::invalid_argument("bitstream needs >= 2 words");
    capacity_ = (words_.size() - 1) * 64 - 64;
}

} // namespace recur
