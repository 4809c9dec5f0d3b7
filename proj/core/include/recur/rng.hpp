#pragma once

#include <cstdint>

namespace recur {

// Counter-based generator built from the SplitMix64 output function.
// A stream is identified by (seed, stream); the word at position c is
//   mix(key + (c+1) * 0x9E3779B97F4A7C15)
// so any word of any stream can be produced independently of the others.
// This makes ensembles reproducible across thread counts and languages.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(derive_key(seed, stream)) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t word_at(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next_u64() { return word_at(counter_++); }

    // uniform in [0,1), 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t counter() const { return counter_; }

private:
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        return mix(mix(seed) ^ mix(stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace recur
