#include "stabletest/config.hpp"

#include "stabletest/zoo.hpp"

namespace stabletest {

namespace {

const nlohmann::json& require_field(const nlohmann::json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ConfigError(std::string("config: missing required field '") + key + "'");
    }
    return *it;
}

}  // namespace

CoreConfig parse_core_config(const nlohmann::json& doc) {
    CoreConfig config;
    const nlohmann::json& space = require_field(doc, "space");
    config.space.x_size = require_field(space, "x_size").get<int>();
    config.space.y_size = require_field(space, "y_size").get<int>();
    if (config.space.x_size < 1 || config.space.y_size < 1) {
        throw ConfigError("config: space sizes must be positive");
    }
    config.probs = require_field(doc, "probs").get<std::vector<double>>();
    const nlohmann::json& learner = require_field(doc, "learner");
    config.learner.name = require_field(learner, "name").get<std::string>();
    config.learner.params = learner.value("params", nlohmann::json::object());
    return config;
}

FiniteDistribution make_distribution(const CoreConfig& config) {
    try {
        return FiniteDistribution(config.space.x_size, config.space.y_size, config.probs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: invalid distribution table: ") + e.what());
    }
}

Learner make_learner(const LearnerSpec& spec, const SpaceSpec& space) {
    const nlohmann::json& p = spec.params;
    try {
        if (spec.name == "constant") {
            return make_constant(space.x_size, p.value("value", 0.0));
        }
        if (spec.name == "knn") {
            return make_knn(space.x_size, p.value("k", 1));
        }
        if (spec.name == "ridge") {
            return make_ridge(space.x_size, p.value("lambda", 1.0));
        }
        if (spec.name == "response-mean") {
            return make_response_mean(space.x_size);
        }
        if (spec.name == "size-reporting") {
            return make_size_reporting(space.x_size);
        }
        if (spec.name == "seed-threshold") {
            return make_seed_threshold(space.x_size, p.value("rho0", 0.3));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: bad learner params: ") + e.what());
    }
    throw ConfigError("config: unknown learner '" + spec.name + "'");
}

}  // namespace stabletest
