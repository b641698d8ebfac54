// Experiment runner behind the CLI: loads configs, runs seeded reproducible
// experiments, and emits CSV / gnuplot-style tables.
#ifndef STABLETEST_EXPERIMENTS_HPP
#define STABLETEST_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "stabletest/config.hpp"

namespace stabletest {

struct ExperimentConfig {
    std::string kind;  // estimate-stability | run-binom-test | power-experiment |
                       // adversarial-demo | bounds | lemma-check
    nlohmann::json doc = nlohmann::json::object();
    std::uint64_t seed = 1;
    std::uint64_t trials = 10'000;
    int workers = 1;
    std::string out_path;         // empty: table goes to stdout
    std::string format = "csv";   // csv | plot (gnuplot-style whitespace table)
};

// Reads kind/seed/trials/workers/out/format defaults out of the document;
// the caller (CLI flags) may override the returned fields afterwards.
ExperimentConfig load_experiment_config(const nlohmann::json& doc);

// Runs one experiment; diagnostics (and tables, when out_path is empty) go
// to `out`. Returns a process exit status.
int run_experiment(const ExperimentConfig& config, std::ostream& out);

// ---- reusable suite runners (lemma-check and the acceptance suite)

struct PartitionSuiteResult {
    int m = 0;
    double gamma = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double worst_margin = 0.0;  // min over trials of (min cell mass - guarantee)
};

PartitionSuiteResult run_partition_suite(int m, double gamma, std::uint64_t trials,
                                         std::uint64_t key);

struct MultinomialSuiteResult {
    int n = 0;
    int m = 0;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;  // max over trials of exact_max / bound
};

MultinomialSuiteResult run_multinomial_suite(int n, int m, std::uint64_t q_trials,
                                             std::uint64_t key);

// A random discrete distribution whose max atom mass is capped at gamma.
std::vector<double> random_masses_with_cap(CounterRng& rng, double gamma);

// Printf-style shortest-roundtrip double formatting used in all tables.
std::string fmt_double(double v);

// FNV-1a of the canonical config dump; recorded in every output header.
std::string config_hash(const nlohmann::json& doc, std::uint64_t seed, std::uint64_t trials);

}  // namespace stabletest

#endif  // STABLETEST_EXPERIMENTS_HPP
