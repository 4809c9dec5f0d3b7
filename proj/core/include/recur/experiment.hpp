#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "recur/maps.hpp"
#include "recur/measure.hpp"
#include "recur/recurrence.hpp"
#include "recur/schedule.hpp"
#include "recur/sprindzuk.hpp"

namespace recur {

// Raised for malformed configs; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    int schema_version = 1;
    std::string kind;              // bc-ratio | return-time | correlation |
                                   // variance | lemma-check | ulam | dimension
    std::string map = "doubling";
    std::string measure = "lebesgue"; // lebesgue | gauss | ulam:<bins>
    std::string engine = "bitstream"; // bitstream | float64

    std::string schedule_kind = "logpow"; // logpow | custom
    double schedule_p = 5.0;
    double schedule_a = 1.0;
    bool schedule_clip = true;
    std::vector<double> schedule_values;

    std::size_t ensemble = 64;
    std::uint64_t orbit_length = 1000000;
    std::vector<std::uint64_t> checkpoints = {1000, 10000, 100000, 1000000};
    std::uint64_t seed = 0;
    bool seed_set = false; // mandatory, no wall-clock default
    unsigned threads = 1;
    std::string out_dir;

    // return-time / dimension
    unsigned mass_j_lo = 5;
    unsigned mass_j_hi = 18;
    std::uint64_t n_max = 1000000;
    std::vector<double> r_grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

    // variance
    std::vector<IntInterval> windows = {{0, 500}, {500, 1000}, {1000, 2000}};

    // correlation
    std::uint64_t lags = 10;
    std::size_t samples = 10000000;

    // ulam
    std::size_t bins = 4096;

    // optional acceptance-style thresholds; empty JSON object text means none
    std::string thresholds_json = "{}";

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;

    IntervalMap make_map() const;
    InvariantMeasure make_measure() const;
    MassSchedule make_schedule() const;
};

struct ExperimentResult {
    std::string points_csv;  // full file contents, header included
    std::string summary_json;
    std::string config_echo_json;
    bool thresholds_passed = true;
    bool had_thresholds = false;
};

// Executes the configured experiment over the ensemble; writes points.csv,
// summary.json and config.echo.json under out_dir when it is set. Results
// are byte-identical for identical configs regardless of thread count.
ExperimentResult run(const ExperimentConfig& config);

// inverse-CDF sampling from per-point derived streams (seed, index)
std::vector<double> sample_initial_points(const InvariantMeasure& mu, std::size_t count,
                                          std::uint64_t seed);

// per-point orbit stream for ensemble member `index`
std::unique_ptr<OrbitStream> make_orbit(const ExperimentConfig& config,
                                        const InvariantMeasure& mu, std::size_t index,
                                        std::uint64_t capacity);

} // namespace recur
