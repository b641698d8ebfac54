// JSON configuration: spaces, probability tables, and learner specs.
#ifndef STABLETEST_CONFIG_HPP
#define STABLETEST_CONFIG_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stabletest/distribution.hpp"
#include "stabletest/learner.hpp"

namespace stabletest {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpaceSpec {
    int x_size = 0;
    int y_size = 0;
};

struct LearnerSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

// {"space": {"x_size": int, "y_size": int},
//  "probs": row-major array (probs[x*y_size + y]),
//  "learner": {"name": string, "params": object}}
struct CoreConfig {
    SpaceSpec space;
    std::vector<double> probs;
    LearnerSpec learner;
};

CoreConfig parse_core_config(const nlohmann::json& doc);

FiniteDistribution make_distribution(const CoreConfig& config);

// Known names: constant (value), knn (k), ridge (lambda), response-mean,
// size-reporting, seed-threshold (rho0).
Learner make_learner(const LearnerSpec& spec, const SpaceSpec& space);

}  // namespace stabletest

#endif  // STABLETEST_CONFIG_HPP
