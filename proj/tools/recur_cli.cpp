// Command-line front end: one subcommand per experiment kind. Exit codes:
// 0 = ran (and passed configured thresholds), 1 = threshold failure,
// 2 = usage or configuration error.

#include <cstdint>
#include <iostream>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "recur/experiment.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"recurrence-lab: interval-map recurrence experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, map_name, measure_name, engine;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    std::size_t ensemble = 0;
    std::uint64_t orbit_length = 0, n_max = 0, lags = 0;
    std::size_t samples = 0, bins = 0;

    const std::vector<std::string> kinds = {"bc-ratio", "return-time", "correlation",
                                            "variance", "lemma-check", "ulam",
                                            "dimension"};
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--seed", seed, "master seed (mandatory unless in config)")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker pool size");
        sub->add_option("--map", map_name, "map name (doubling|tent|gauss|skewed:<p>)");
        sub->add_option("--measure", measure_name, "measure (lebesgue|gauss|ulam:<N>)");
        sub->add_option("--engine", engine, "orbit engine (bitstream|float64)");
        sub->add_option("--ensemble", ensemble, "ensemble size");
        sub->add_option("--orbit-length", orbit_length, "orbit length n");
        sub->add_option("--n-max", n_max, "return-time search cap");
        sub->add_option("--lags", lags, "correlation lag range");
        sub->add_option("--samples", samples, "Monte Carlo sample budget");
        sub->add_option("--bins", bins, "Ulam bin count");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json j;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw recur::ConfigError("cannot open config file: " + config_path);
            in >> j;
        }
        // CLI flags override top-level config fields
        j["kind"] = app.get_subcommands().front()->get_name();
        if (seed_given) j["seed"] = seed;
        if (!out_dir.empty()) j["out"] = out_dir;
        if (threads != 0) j["threads"] = threads;
        if (!map_name.empty()) j["map"] = map_name;
        if (!measure_name.empty()) j["measure"] = measure_name;
        if (!engine.empty()) j["engine"] = engine;
        if (ensemble != 0) j["ensemble"] = ensemble;
        if (orbit_length != 0) j["orbit_length"] = orbit_length;
        if (n_max != 0) j["n_max"] = n_max;
        if (lags != 0) j["lags"] = lags;
        if (samples != 0) j["samples"] = samples;
        if (bins != 0) j["bins"] = bins;

        const auto config = recur::ExperimentConfig::from_json(j);
        const auto result = recur::run(config);
        std::cout << result.summary_json;
        return result.thresholds_passed ? 0 : 1;
    } catch (const recur::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
