// Instability probability of a (learner, distribution, n) triple: the
// leave-one-out perturbation statistic, its Monte-Carlo estimator, and an
// exact enumeration oracle for small spaces.
#ifndef STABLETEST_STABILITY_HPP
#define STABLETEST_STABILITY_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "stabletest/distribution.hpp"
#include "stabletest/learner.hpp"

namespace stabletest {

struct EnumerationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EstimateMethod { monte_carlo, exact };

struct StabilityEstimate {
    double epsilon = 0.0;
    double point_estimate = 0.0;
    std::uint64_t trials = 0;  // 0 for the exact method
    double std_error = 0.0;    // 0 for the exact method
    EstimateMethod method = EstimateMethod::monte_carlo;
};

// |f_n(test_x) - f_{n-1}(test_x)| where f_{n-1} is fit on data_n minus its
// last point, both fits sharing the seed. Requires |data_n| >= 1.
double perturbation(const Learner& learner, const Dataset& data_n, int test_x,
                    const RandomSeed& seed);

// Fraction of trials with perturbation > epsilon; each trial draws a fresh
// size-n training set, a test feature, and a seed. Trials are split across
// `workers` threads; the result does not depend on the worker count.
StabilityEstimate estimate_delta_star_mc(const Learner& learner, const FiniteDistribution& dist,
                                         int n, double epsilon, std::uint64_t trials,
                                         const RandomSeed& seed, int workers = 1);

struct ExactOptions {
    std::uint64_t enumeration_cap = 10'000'000;  // on (|X||Y|)^(n+1)
    std::uint64_t seed_mc_draws = 256;           // fallback for arbitrary seed dependence
    std::uint64_t seed_mc_key = 0x5eedfa11u;
};

// Exact instability probability by summing product probabilities over all
// ordered datasets, test features, and seed buckets. Learners with arbitrary
// seed dependence fall back to Monte-Carlo over seeds (the data part stays
// exhaustive) and report method == monte_carlo.
StabilityEstimate estimate_delta_star_exact(const Learner& learner, const FiniteDistribution& dist,
                                            int n, double epsilon, const ExactOptions& opts = {});

namespace detail {

// Visits every ordered dataset of size n with positive product probability.
// fn(dataset, probability).
void for_each_dataset(const FiniteDistribution& dist, int n,
                      const std::function<void(const Dataset&, double)>& fn);

void check_enumeration_cap(const FiniteDistribution& dist, int n, std::uint64_t cap);

}  // namespace detail

}  // namespace stabletest

#endif  // STABLETEST_STABILITY_HPP
