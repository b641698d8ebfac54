#include <doctest.h>

#include "stabletest/binom_test.hpp"
#include "stabletest/stability.hpp"
#include "stabletest/zoo.hpp"
#include "testutil.hpp"

using namespace stabletest;

namespace {

BinomialTestConfig standard_config(int n, std::uint64_t kappa, double delta, double alpha,
                                   double epsilon = 0.5) {
    BinomialTestConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.alpha = alpha;
    cfg.n = n;
    cfg.n_labeled = kappa * static_cast<std::uint64_t>(n);
    cfg.n_unlabeled = kappa;
    cfg.b_train = kappa * (2 * static_cast<std::uint64_t>(n) - 1);
    cfg.b_eval = 2 * kappa;
    return cfg;
}

}  // namespace

TEST_CASE("compute_kappa: the three resource ratios") {
    CHECK(compute_kappa(10, 100, 50, 100) == doctest::Approx(5.0));
    CHECK(compute_kappa_floor(10, 100, 50, 100) == 5);
    CHECK(compute_kappa(10, 20, 1000, 0) == doctest::Approx(2.0));
    CHECK(compute_kappa_floor(10, 20, 1000, 0) == 2);
    // with no unlabeled data the third ratio can never bind
    CHECK(compute_kappa(10, 1000, 40, 0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(compute_kappa(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("binomial_thresholds: worked examples") {
    const BinomialThresholds t1 = binomial_thresholds(5, 0.1, 0.05);
    CHECK(t1.k_star == 0);
    CHECK(t1.a_star == doctest::Approx(0.05 / std::pow(0.9, 5)).epsilon(1e-12));

    const BinomialThresholds t2 = binomial_thresholds(1, 0.5, 0.25);
    CHECK(t2.k_star == 0);
    CHECK(t2.a_star == doctest::Approx(0.5).epsilon(1e-15));

    // alpha equal to P(B=0) exactly: a* in [0,1) forces k*=1, a*=0
    const BinomialThresholds t3 = binomial_thresholds(1, 0.5, 0.5);
    CHECK(t3.k_star == 1);
    CHECK(t3.a_star == 0.0);

    // delta = 0 makes the statistic degenerate at zero
    const BinomialThresholds t4 = binomial_thresholds(7, 0.0, 0.1);
    CHECK(t4.k_star == 0);
    CHECK(t4.a_star == doctest::Approx(0.1));
}

TEST_CASE("binomial_thresholds: the defining identity holds across sizes") {
    for (std::uint64_t m : {1ULL, 3ULL, 17ULL, 64ULL, 65ULL, 200ULL}) {
        for (double delta : {0.0, 0.1, 0.37, 0.9}) {
            for (double alpha : {0.01, 0.05, 0.5, 0.93}) {
                const BinomialThresholds t = binomial_thresholds(m, delta, alpha);
                CHECK(t.a_star >= 0.0);
                CHECK(t.a_star < 1.0);
                long double below = 0.0L;
                long double at = 0.0L;
                for (std::uint64_t k = 0; k <= m; ++k) {
                    long double pmf = 1.0L;
                    if (delta == 0.0) {
                        pmf = k == 0 ? 1.0L : 0.0L;
                    } else {
                        pmf = std::exp(std::lgamma(static_cast<double>(m) + 1) -
                                       std::lgamma(static_cast<double>(k) + 1) -
                                       std::lgamma(static_cast<double>(m - k) + 1) +
                                       k * std::log(delta) +
                                       static_cast<double>(m - k) * std::log1p(-delta));
                    }
                    if (k < t.k_star) below += pmf;
                    if (k == t.k_star) at = pmf;
                }
                CHECK(static_cast<double>(below + t.a_star * at) ==
                      doctest::Approx(alpha).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("binomial strategy: trace layout matches the sample-splitting procedure") {
    BinomialTestConfig cfg;
    cfg.epsilon = 0.5;
    cfg.delta = 0.1;
    cfg.alpha = 0.05;
    cfg.n = 10;
    cfg.b_train = 100;
    cfg.n_labeled = 50;
    cfg.n_unlabeled = 100;
    CHECK(cfg.kappa_floor() == 5);

    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    CounterRng rng(4);
    const Dataset labeled = sample_dataset(dist, 50, rng.next_seed());
    const std::vector<int> unlabeled = sample_features(dist, 100, rng.next_seed());

    const BinomialStrategy strategy(cfg);
    const TestTrace trace = run_test(strategy, make_knn(2, 1), labeled, unlabeled,
                                     BudgetLedger(cfg.b_train, 0), rng.next_seed());

    // one size-n and one size-(n-1) fit per k
    REQUIRE(trace.rounds.size() == 10);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        const std::size_t expected = r % 2 == 0 ? 10 : 9;
        CHECK(trace.rounds[r].train.size() == expected);
        total += trace.rounds[r].train.size();
    }
    CHECK(total == 95);  // kappa_floor * (2n - 1)
    CHECK(trace.used_train == 95);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(trace.rounds[2 * k].seed == trace.rounds[2 * k + 1].seed);
        for (std::size_t i = 0; i < 9; ++i) {
            CHECK(trace.rounds[2 * k].train[i] == labeled[k * 10 + i]);
            CHECK(trace.rounds[2 * k + 1].train[i] == labeled[k * 10 + i]);
        }
    }
}

TEST_CASE("binomial strategy: constant predictor rejects with probability a*") {
    const BinomialTestConfig cfg = standard_config(5, 5, 0.1, 0.05);
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    const McRejectionRate mc =
        binomial_mc_rejection_rate(cfg, make_constant(2), dist, 20'000, 77, 2);
    const double a_star = 0.05 / std::pow(0.9, 5);
    CHECK(std::abs(mc.rate - a_star) <= 3.0 * std::sqrt(a_star * (1 - a_star) / 20'000));
}

TEST_CASE("binomial strategy: size-reporting learner is rejected at most alpha") {
    const BinomialTestConfig cfg = standard_config(5, 5, 0.1, 0.05);
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    const McRejectionRate mc =
        binomial_mc_rejection_rate(cfg, make_size_reporting(2), dist, 20'000, 78, 2);
    CHECK(mc.rate <= 0.05 + 3.0 * mc.std_error);
}

TEST_CASE("binomial strategy: exact size at the null boundary delta* = delta") {
    const BinomialTestConfig cfg = standard_config(5, 5, 0.1, 0.05);
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    const McRejectionRate mc =
        binomial_mc_rejection_rate(cfg, make_seed_threshold(2, 0.1), dist, 20'000, 79, 2);
    CHECK(std::abs(mc.rate - 0.05) <= 3.0 * std::sqrt(0.05 * 0.95 / 20'000));
}

TEST_CASE("binomial strategy: kappa_floor = 0 always returns verdict 0") {
    BinomialTestConfig cfg;
    cfg.epsilon = 0.5;
    cfg.delta = 0.1;
    cfg.alpha = 0.05;
    cfg.n = 10;
    cfg.b_train = 5;  // below n
    cfg.n_labeled = 50;
    cfg.n_unlabeled = 10;
    CHECK(cfg.kappa_floor() == 0);
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    CounterRng rng(5);
    const Dataset labeled = sample_dataset(dist, 50, rng.next_seed());
    const BinomialStrategy strategy(cfg);
    const TestTrace trace = run_test(strategy, make_constant(2), labeled, {0, 1},
                                     BudgetLedger(cfg.b_train, 0), rng.next_seed());
    CHECK(trace.verdict == 0);
    CHECK(trace.rounds.empty());
}

TEST_CASE("power_closed_form: worked examples and the boundary fallback") {
    const PowerValue p1 = power_closed_form(0.05, 0.0, 0.1, 5);
    CHECK(p1.closed_form);
    CHECK(p1.value == doctest::Approx(0.05 / std::pow(0.9, 5)).epsilon(1e-12));

    const PowerValue p2 = power_closed_form(0.05, 0.1, 0.1, 5);
    CHECK(p2.value == doctest::Approx(0.05).epsilon(1e-12));

    const PowerValue p3 = power_closed_form(0.05, 0.05, 0.1, 10);
    CHECK(p3.value == doctest::Approx(0.05 * std::pow(0.95 / 0.9, 10)).epsilon(1e-12));

    // outside the closed-form condition the general thresholds take over
    const PowerValue p4 = power_closed_form(0.5, 0.0, 0.9, 2);  // delta >= 1 - alpha^{1/2}
    CHECK_FALSE(p4.closed_form);
    CHECK(p4.value == doctest::Approx(randomized_test_power(2, 0.9, 0.5, 0.0)).epsilon(1e-12));

    // at delta* = delta any exact-size randomized test rejects at rate alpha
    CHECK(randomized_test_power(12, 0.3, 0.07, 0.3) == doctest::Approx(0.07).epsilon(1e-10));
}

TEST_CASE("power_closed_form: monotone in delta* and kappa") {
    for (double delta : {0.1, 0.2}) {
        double prev = 1.0;
        for (double ds : {0.0, 0.02, 0.05, 0.08}) {
            const double v = power_closed_form(0.05, ds, delta, 5).value;
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
        double prev_k = 0.0;
        for (std::uint64_t kappa : {1ULL, 2ULL, 5ULL, 10ULL, 20ULL}) {
            const double v = power_closed_form(0.05, 0.02, delta, kappa).value;
            CHECK(v >= prev_k - 1e-15);
            prev_k = v;
        }
    }
}

TEST_CASE("binomial statistic is distributed Binomial(kappa_floor, delta*)") {
    const BinomialTestConfig cfg = standard_config(3, 5, 0.1, 0.05);
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);
    const Learner knn = make_knn(2, 1);
    const double delta_star = estimate_delta_star_exact(knn, dist, 3, 0.5).point_estimate;

    const std::uint64_t trials = 20'000;
    std::vector<std::uint64_t> counts(6, 0);
    const BinomialStrategy strategy(cfg);
    const CounterRng root(314);
    RunOptions options;
    options.mode = AccessMode::black_box_models;
    for (std::uint64_t t = 0; t < trials; ++t) {
        CounterRng rng = root.split(t);
        const Dataset labeled = sample_dataset(dist, 15, rng.next_seed());
        const std::vector<int> unlabeled = sample_features(dist, 5, rng.next_seed());
        const TestTrace trace = run_test(strategy, knn, labeled, unlabeled,
                                         BudgetLedger(cfg.b_train, cfg.b_eval), rng.next_seed(),
                                         options);
        ++counts[binomial_statistic(trace, cfg)];
    }

    std::vector<double> pmf(6, 0.0);
    for (int k = 0; k <= 5; ++k) {
        pmf[static_cast<std::size_t>(k)] = std::exp(
            std::lgamma(6.0) - std::lgamma(k + 1.0) - std::lgamma(6.0 - k) +
            k * std::log(delta_star) + (5.0 - k) * std::log1p(-delta_star));
    }
    CHECK(testutil::gof_pvalue(counts, pmf, trials) > 0.001);
}

TEST_CASE("binomial config validation") {
    BinomialTestConfig cfg = standard_config(5, 5, 0.1, 0.05);
    CHECK_NOTHROW(cfg.validate());
    cfg.n_unlabeled = 0;
    cfg.n_labeled = 25;  // kappa_floor 5 but no test points left
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = standard_config(5, 5, 1.0, 0.05);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
