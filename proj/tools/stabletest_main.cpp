// stabletest CLI: seeded, reproducible stability-testing experiments.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabletest/experiments.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed (overrides config)");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials (overrides config)");
    cmd->add_option("--workers", o.workers, "worker threads for trial-level parallelism");
    cmd->add_option("--out", o.out, "output path (tables; trace path for run-binom-test)");
    cmd->add_option("--format", o.format, "output format: csv|plot")
        ->check(CLI::IsMember({"csv", "plot"}));
}

int run(const std::string& kind, const CliOverrides& o) {
    std::ifstream in(o.config_path);
    if (!in) {
        std::cerr << "error: cannot read config " << o.config_path << '\n';
        return 2;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: bad JSON in " << o.config_path << ": " << e.what() << '\n';
        return 2;
    }

    stabletest::ExperimentConfig config = stabletest::load_experiment_config(doc);
    if (!config.kind.empty() && config.kind != kind) {
        std::cerr << "error: config is for experiment '" << config.kind << "', not '" << kind
                  << "'\n";
        return 2;
    }
    config.kind = kind;
    if (o.seed) config.seed = *o.seed;
    if (o.trials) config.trials = *o.trials;
    if (o.workers) config.workers = *o.workers;
    if (o.out) config.out_path = *o.out;
    if (o.format) config.format = *o.format;

    try {
        return stabletest::run_experiment(config, std::cout);
    } catch (const stabletest::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budgeted black-box tests of algorithmic stability"};
    app.require_subcommand(1);

    static const char* kinds[] = {"estimate-stability", "run-binom-test", "power-experiment",
                                  "adversarial-demo",   "bounds",         "lemma-check"};
    static const char* blurbs[] = {
        "Monte-Carlo and exact estimates of the instability probability",
        "one harness run of the binomial test (verdict + JSONL trace)",
        "MC power of the binomial test over a (delta*, delta, kappa) grid",
        "corrupted-mixture constructions: bounds, exact instability, coupling",
        "closed-form power ceilings for the given resources",
        "partition / multinomial / data-counts lemma suites",
    };

    std::array<CliOverrides, 6> overrides;
    for (std::size_t i = 0; i < 6; ++i) {
        CLI::App* cmd = app.add_subcommand(kinds[i], blurbs[i]);
        add_common_options(cmd, overrides[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < 6; ++i) {
        if (app.get_subcommand(kinds[i])->parsed()) return run(kinds[i], overrides[i]);
    }
    return 2;
}
