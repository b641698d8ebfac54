#include "stabletest/stability.hpp"

#include <cmath>
#include <vector>

#include "stabletest/parallel.hpp"

namespace stabletest {

double perturbation(const Learner& learner, const Dataset& data_n, int test_x,
                    const RandomSeed& seed) {
    if (data_n.empty()) throw std::invalid_argument("perturbation: requires n >= 1");
    const FittedModel fit_n = learner.fit(data_n, seed);
    const FittedModel fit_n1 = learner.fit(data_n.without_last(), seed);
    return std::abs(fit_n.predict(test_x) - fit_n1.predict(test_x));
}

StabilityEstimate estimate_delta_star_mc(const Learner& learner, const FiniteDistribution& dist,
                                         int n, double epsilon, std::uint64_t trials,
                                         const RandomSeed& seed, int workers) {
    if (n < 1) throw std::invalid_argument("estimate_delta_star_mc: requires n >= 1");
    if (trials < 1) throw std::invalid_argument("estimate_delta_star_mc: requires trials >= 1");
    if (workers < 1) workers = 1;

    const CounterRng root(seed.bits());
    const std::uint64_t total = parallel_count(trials, workers, [&](std::uint64_t t) {
        CounterRng rng = root.split(t);
        Dataset data;
        for (int i = 0; i < n; ++i) data.push_back(dist.sample_point(rng));
        const int test_x = dist.sample_feature(rng);
        const RandomSeed xi = rng.next_seed();
        return perturbation(learner, data, test_x, xi) > epsilon;
    });

    const double p = static_cast<double>(total) / static_cast<double>(trials);
    StabilityEstimate est;
    est.epsilon = epsilon;
    est.point_estimate = p;
    est.trials = trials;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    est.method = EstimateMethod::monte_carlo;
    return est;
}

namespace detail {

void check_enumeration_cap(const FiniteDistribution& dist, int n, std::uint64_t cap) {
    const auto atoms = static_cast<double>(dist.atom_count());
    if (std::pow(atoms, n + 1) > static_cast<double>(cap)) {
        throw EnumerationLimitError("exact enumeration exceeds the configured cap");
    }
}

namespace {

void recurse_datasets(const FiniteDistribution& dist, int remaining, Dataset& prefix,
                      double prob, const std::function<void(const Dataset&, double)>& fn) {
    if (remaining == 0) {
        fn(prefix, prob);
        return;
    }
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            const double p = dist.prob(x, y);
            if (p == 0.0) continue;
            prefix.push_back(DataPoint{x, y});
            recurse_datasets(dist, remaining - 1, prefix, prob * p, fn);
            prefix.pop_back();
        }
    }
}

}  // namespace

void for_each_dataset(const FiniteDistribution& dist, int n,
                      const std::function<void(const Dataset&, double)>& fn) {
    Dataset prefix;
    recurse_datasets(dist, n, prefix, 1.0, fn);
}

}  // namespace detail

StabilityEstimate estimate_delta_star_exact(const Learner& learner, const FiniteDistribution& dist,
                                            int n, double epsilon, const ExactOptions& opts) {
    if (n < 1) throw std::invalid_argument("estimate_delta_star_exact: requires n >= 1");
    detail::check_enumeration_cap(dist, n, opts.enumeration_cap);

    const std::vector<double> px = dist.marginal_x();
    long double exceed_mass = 0.0L;
    long double var_acc = 0.0L;
    const bool seed_mc = learner.seed_dependence() == SeedDependence::arbitrary;

    if (!seed_mc) {
        const auto buckets = seed_buckets(learner);
        detail::for_each_dataset(dist, n, [&](const Dataset& data, double p_data) {
            const Dataset data_n1 = data.without_last();
            for (const auto& [rep, weight] : buckets) {
                const FittedModel fit_n = learner.fit(data, rep);
                const FittedModel fit_n1 = learner.fit(data_n1, rep);
                for (int x = 0; x < dist.x_size(); ++x) {
                    if (px[static_cast<std::size_t>(x)] == 0.0) continue;
                    if (std::abs(fit_n.predict(x) - fit_n1.predict(x)) > epsilon) {
                        exceed_mass += static_cast<long double>(p_data) * weight *
                                       px[static_cast<std::size_t>(x)];
                    }
                }
            }
        });
    } else {
        // Exhaustive over data, Monte-Carlo over seeds: per dataset, average
        // the exceedance indicator across an independent seed stream.
        const std::uint64_t draws = opts.seed_mc_draws;
        const CounterRng seed_root{opts.seed_mc_key};
        std::uint64_t dataset_index = 0;
        detail::for_each_dataset(dist, n, [&](const Dataset& data, double p_data) {
            const Dataset data_n1 = data.without_last();
            CounterRng rng = seed_root.split(dataset_index++);
            std::vector<std::uint64_t> exceed(static_cast<std::size_t>(dist.x_size()), 0);
            for (std::uint64_t d = 0; d < draws; ++d) {
                const RandomSeed xi = rng.next_seed();
                const FittedModel fit_n = learner.fit(data, xi);
                const FittedModel fit_n1 = learner.fit(data_n1, xi);
                for (int x = 0; x < dist.x_size(); ++x) {
                    if (std::abs(fit_n.predict(x) - fit_n1.predict(x)) > epsilon) {
                        ++exceed[static_cast<std::size_t>(x)];
                    }
                }
            }
            for (int x = 0; x < dist.x_size(); ++x) {
                const double w = p_data * px[static_cast<std::size_t>(x)];
                if (w == 0.0) continue;
                const double phat = static_cast<double>(exceed[static_cast<std::size_t>(x)]) /
                                    static_cast<double>(draws);
                exceed_mass += static_cast<long double>(w) * phat;
                var_acc += static_cast<long double>(w) * w * phat * (1.0 - phat) /
                           static_cast<double>(draws);
            }
        });
    }

    StabilityEstimate est;
    est.epsilon = epsilon;
    est.point_estimate = static_cast<double>(exceed_mass);
    est.trials = seed_mc ? opts.seed_mc_draws : 0;
    est.std_error = seed_mc ? std::sqrt(static_cast<double>(var_acc)) : 0.0;
    est.method = seed_mc ? EstimateMethod::monte_carlo : EstimateMethod::exact;
    return est;
}

}  // namespace stabletest
