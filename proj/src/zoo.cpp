#include "stabletest/zoo.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace stabletest {

namespace {

void check_feature_range(const Dataset& data, int x_size, const char* who) {
    for (const DataPoint& p : data) {
        if (p.x < 0 || p.x >= x_size) {
            throw std::invalid_argument(std::string(who) + ": feature outside the learner's space");
        }
    }
}

}  // namespace

std::vector<std::pair<RandomSeed, double>> seed_buckets(const Learner& learner) {
    std::vector<double> edges;
    edges.push_back(0.0);
    for (double c : learner.seed_cuts()) {
        if (c > 0.0 && c < 1.0) edges.push_back(c);
    }
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::pair<RandomSeed, double>> buckets;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        buckets.emplace_back(RandomSeed::from_value(0.5 * (lo + hi)), hi - lo);
    }
    return buckets;
}

Learner make_constant(int x_size, double value) {
    auto fit = [x_size, value](const Dataset& data, const RandomSeed&) {
        check_feature_range(data, x_size, "constant");
        return FittedModel(std::vector<double>(static_cast<std::size_t>(x_size), value));
    };
    return Learner("constant", std::move(fit), SeedDependence::none);
}

Learner make_knn(int x_size, int k) {
    if (k < 1) throw std::invalid_argument("make_knn: k must be >= 1");
    auto fit = [x_size, k](const Dataset& data, const RandomSeed&) {
        check_feature_range(data, x_size, "knn");
        std::vector<double> table(static_cast<std::size_t>(x_size), 0.0);
        if (!data.empty()) {
            const std::vector<DataPoint> pts = data.sorted_points();
            std::vector<DataPoint> order(pts);
            for (int x = 0; x < x_size; ++x) {
                std::sort(order.begin(), order.end(), [x](DataPoint a, DataPoint b) {
                    const int da = std::abs(a.x - x);
                    const int db = std::abs(b.x - x);
                    return std::tie(da, a.x, a.y) < std::tie(db, b.x, b.y);
                });
                const std::size_t take = std::min<std::size_t>(order.size(), static_cast<std::size_t>(k));
                double sum = 0.0;
                for (std::size_t i = 0; i < take; ++i) sum += order[i].y_real();
                table[static_cast<std::size_t>(x)] = sum / static_cast<double>(take);
            }
        }
        return FittedModel(std::move(table));
    };
    return Learner("knn", std::move(fit), SeedDependence::none);
}

Learner make_ridge(int x_size, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("make_ridge: lambda must be >= 0");
    auto fit = [x_size, lambda](const Dataset& data, const RandomSeed&) {
        check_feature_range(data, x_size, "ridge");
        std::vector<double> count(static_cast<std::size_t>(x_size), 0.0);
        std::vector<double> sum(static_cast<std::size_t>(x_size), 0.0);
        for (const DataPoint& p : data.sorted_points()) {
            count[static_cast<std::size_t>(p.x)] += 1.0;
            sum[static_cast<std::size_t>(p.x)] += p.y_real();
        }
        std::vector<double> table(static_cast<std::size_t>(x_size), 0.0);
        for (int x = 0; x < x_size; ++x) {
            const double denom = count[static_cast<std::size_t>(x)] + lambda;
            table[static_cast<std::size_t>(x)] =
                denom > 0.0 ? sum[static_cast<std::size_t>(x)] / denom : 0.0;
        }
        return FittedModel(std::move(table));
    };
    return Learner("ridge", std::move(fit), SeedDependence::none);
}

Learner make_response_mean(int x_size) {
    auto fit = [x_size](const Dataset& data, const RandomSeed&) {
        check_feature_range(data, x_size, "response-mean");
        double mean = 0.0;
        if (!data.empty()) {
            double sum = 0.0;
            for (const DataPoint& p : data.sorted_points()) sum += p.y_real();
            mean = sum / static_cast<double>(data.size());
        }
        return FittedModel(std::vector<double>(static_cast<std::size_t>(x_size), mean));
    };
    return Learner("response-mean", std::move(fit), SeedDependence::none);
}

Learner make_size_reporting(int x_size) {
    auto fit = [x_size](const Dataset& data, const RandomSeed&) {
        check_feature_range(data, x_size, "size-reporting");
        return FittedModel(std::vector<double>(static_cast<std::size_t>(x_size),
                                               static_cast<double>(data.size())));
    };
    return Learner("size-reporting", std::move(fit), SeedDependence::none);
}

Learner make_seed_threshold(int x_size, double rho0) {
    if (rho0 < 0.0 || rho0 > 1.0) {
        throw std::invalid_argument("make_seed_threshold: rho0 must lie in [0,1]");
    }
    auto fit = [x_size, rho0](const Dataset& data, const RandomSeed& seed) {
        check_feature_range(data, x_size, "seed-threshold");
        const double v = seed.value() < rho0 ? static_cast<double>(data.size()) : 0.0;
        return FittedModel(std::vector<double>(static_cast<std::size_t>(x_size), v));
    };
    std::vector<double> cuts;
    if (rho0 > 0.0 && rho0 < 1.0) cuts.push_back(rho0);
    return Learner("seed-threshold", std::move(fit), SeedDependence::bucketed, std::move(cuts));
}

std::vector<Learner> builtin_learner_zoo(int x_size, int /*y_size*/) {
    std::vector<Learner> zoo;
    zoo.push_back(make_constant(x_size));
    zoo.push_back(make_knn(x_size, 1));
    zoo.push_back(make_ridge(x_size, 1.0));
    zoo.push_back(make_response_mean(x_size));
    zoo.push_back(make_size_reporting(x_size));
    zoo.push_back(make_seed_threshold(x_size, 0.3));
    return zoo;
}

}  // namespace stabletest
