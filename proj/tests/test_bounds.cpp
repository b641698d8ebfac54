#include <doctest.h>

#include <numeric>

#include "stabletest/bounds.hpp"
#include "stabletest/experiments.hpp"
#include "stabletest/stability.hpp"
#include "testutil.hpp"

using namespace stabletest;

namespace {

PowerBoundInputs base_inputs() {
    PowerBoundInputs in;
    in.alpha = 0.05;
    in.delta = 0.5;
    in.delta_star = 0.0;
    in.n = 10;
    in.n_labeled = 100;
    in.n_unlabeled = 50;
    in.b_train = 20;
    in.x_size = SpaceSize::infinite();
    in.y_size = SpaceSize::infinite();
    return in;
}

}  // namespace

TEST_CASE("theorem1_bound: computational term on infinite spaces") {
    const Theorem1Bound b = theorem1_bound(base_inputs());
    // alpha * ((1-0)/(1-0.5))^{20/10} = 0.05 * 4
    CHECK(b.train_term == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(b.minimum <= b.train_term);
}

TEST_CASE("theorem1_bound: unlimited budget on infinite Y leaves the alpha ceiling") {
    PowerBoundInputs in = base_inputs();
    in.delta_star = in.delta;  // ratio 1
    in.b_train = std::numeric_limits<double>::infinity();
    const Theorem1Bound b = theorem1_bound(in);
    CHECK(b.y_term == doctest::Approx(in.alpha).epsilon(1e-12));
    CHECK(b.minimum == doctest::Approx(in.alpha).epsilon(1e-12));
}

TEST_CASE("theorem1_bound: a budget covering a finite Y space voids the y-term") {
    PowerBoundInputs in = base_inputs();
    in.y_size = SpaceSize::finite(16);
    in.b_train = 16;
    const Theorem1Bound b = theorem1_bound(in);
    CHECK(std::isinf(b.y_term));
    CHECK_FALSE(std::isinf(b.train_term));
}

TEST_CASE("theorem1_bound: delta_tilde saturation degenerates the x-term") {
    PowerBoundInputs in = base_inputs();
    in.n = 2;
    in.delta = 0.6;  // delta + 1/n >= 1
    const Theorem1Bound b = theorem1_bound(in);
    CHECK(b.x_term_degenerate);
    CHECK(std::isinf(b.x_term));
}

TEST_CASE("theorem1_bound: validation") {
    PowerBoundInputs in = base_inputs();
    in.delta_star = 0.7;  // above delta
    CHECK_THROWS_AS(theorem1_bound(in), std::invalid_argument);
    in = base_inputs();
    in.alpha = 0.0;
    CHECK_THROWS_AS(theorem1_bound(in), std::invalid_argument);
}

TEST_CASE("theorem2_bound: worked example and gates") {
    PowerBoundInputs in;
    in.alpha = 0.05;
    in.delta = 0.1;
    in.delta_star = 0.0;
    in.n = 100;
    in.b_train = 500;
    in.max_point_mass = 0.1;
    const Theorem2Bound b = theorem2_bound(in, 1.0);
    CHECK(b.applicable);
    CHECK(b.value == doctest::Approx(0.06 * std::pow(1.0 / 0.89, 5)).epsilon(1e-12));

    in.max_point_mass = 0.25;
    CHECK_FALSE(theorem2_bound(in, 1.0).applicable);
    in.max_point_mass = 0.1;
    in.n = 2;
    in.delta = 0.5;  // delta + 1/n = 1
    CHECK_FALSE(theorem2_bound(in, 1.0).applicable);

    // 1/n -> 0 approaches the randomized computational term
    PowerBoundInputs big = in;
    big.n = 1'000'000;
    big.delta = 0.1;
    big.b_train = 2'000'000;
    const Theorem2Bound t2 = theorem2_bound(big, 1.0);
    const Theorem1Bound t1 = theorem1_bound(big);
    CHECK(t2.value == doctest::Approx(t1.train_term).epsilon(1e-4));
}

TEST_CASE("theorem3_bound: recovers the unlimited-budget exponent display") {
    PowerBoundInputs in;
    in.alpha = 0.05;
    in.delta = 0.2;
    in.delta_star = 0.05;
    in.n = 4;
    in.n_labeled = 12;
    in.n_unlabeled = 2;
    in.b_train = std::numeric_limits<double>::infinity();
    in.b_eval = std::numeric_limits<double>::infinity();
    const Theorem3Bound b = theorem3_bound(in);
    const double ratio = 0.95 / 0.8;
    // exponents: N_l/n = 3 and (N_l+N_u)/(n+1) = 2.8; the min picks 2.8
    CHECK(b.minimum == doctest::Approx(0.05 * std::pow(ratio, 2.8)).epsilon(1e-12));
    CHECK(b.eval_term == doctest::Approx(0.05 * std::pow(ratio, 2.8)).epsilon(1e-12));

    // with delta* = delta everything collapses to alpha
    in.delta_star = in.delta;
    CHECK(theorem3_bound(in).minimum == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("theorem3_bound: b_eval = 0 charges the train budget alone") {
    PowerBoundInputs in = base_inputs();
    in.x_size = SpaceSize::finite(100);
    in.b_train = 30;
    in.b_eval = 0;
    const Theorem3Bound b = theorem3_bound(in);
    const double expected = 0.05 * std::pow((1.0 - 0.0) / (1.0 - 0.5), 150.0 / 11.0) / (1.0 - 0.3);
    CHECK(b.eval_term == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("theorem bounds are nondecreasing in b_train and n_labeled") {
    CounterRng rng(333);
    for (int rep = 0; rep < 200; ++rep) {
        PowerBoundInputs in;
        in.alpha = 0.01 + 0.5 * rng.next_unit();
        in.delta = 0.05 + 0.6 * rng.next_unit();
        in.delta_star = in.delta * rng.next_unit();
        in.n = 2 + static_cast<int>(rng.next_below(20));
        in.n_labeled = rng.next_below(500);
        in.n_unlabeled = rng.next_below(500);
        in.b_train = rng.next_below(400);
        in.b_eval = rng.next_below(100);
        in.x_size = rng.next_unit() < 0.5 ? SpaceSize::infinite()
                                          : SpaceSize::finite(1 + rng.next_below(600));
        in.y_size = rng.next_unit() < 0.5 ? SpaceSize::infinite()
                                          : SpaceSize::finite(1 + rng.next_below(600));

        PowerBoundInputs more_budget = in;
        more_budget.b_train += 1 + rng.next_below(100);
        CHECK(theorem1_bound(more_budget).minimum >= theorem1_bound(in).minimum - 1e-12);
        CHECK(theorem3_bound(more_budget).minimum >= theorem3_bound(in).minimum - 1e-12);

        PowerBoundInputs more_labeled = in;
        more_labeled.n_labeled += 1 + rng.next_below(100);
        CHECK(theorem1_bound(more_labeled).minimum >= theorem1_bound(in).minimum - 1e-12);
    }
}

TEST_CASE("partition_prefix: greedy traces") {
    const std::vector<double> masses{0.3, 0.3, 0.2, 0.2};
    const std::vector<int> c = partition_prefix(masses, 2.0 / 3.0);
    REQUIRE(c.size() == 2);
    double mass = 0.0;
    for (int id : c) mass += masses[static_cast<std::size_t>(id)];
    CHECK(mass == doctest::Approx(0.6));

    // a single dominant atom of exactly gamma
    const std::vector<int> dom = partition_prefix({0.5, 0.25, 0.25}, 0.5);
    CHECK(dom == std::vector<int>{0});

    // four quarters at gamma = 0.5: one atom suffices
    const std::vector<int> quarters = partition_prefix({0.25, 0.25, 0.25, 0.25}, 0.5);
    CHECK(quarters == std::vector<int>{0});

    CHECK_THROWS_AS(partition_prefix({0.6, 0.4}, 0.5), std::invalid_argument);
}

TEST_CASE("construct_partition: worked example and the uniform equality case") {
    const PartitionResult two = construct_partition({0.3, 0.3, 0.2, 0.2}, 2, 0.3);
    CHECK(two.cell_mass[0] == doctest::Approx(0.6));
    CHECK(two.cell_mass[1] == doctest::Approx(0.4));
    CHECK(two.min_mass >= two.guarantee - 1e-12);
    CHECK(two.guarantee == doctest::Approx(std::min(1.0 / 3.0, 0.7)));

    for (int m : {2, 3, 4, 5, 6}) {
        const std::vector<double> uniform(static_cast<std::size_t>(m + 1),
                                          1.0 / static_cast<double>(m + 1));
        const PartitionResult pr = construct_partition(uniform, m, 1.0 / (m + 1.0));
        CHECK(pr.min_mass >= pr.guarantee - 1e-12);
        CHECK(pr.min_mass == doctest::Approx(1.0 / (m + 1.0)));
    }

    // gamma >= 1/(M-1) violates the lemma's precondition
    CHECK_THROWS_AS(construct_partition({1.0}, 2, 1.0), std::invalid_argument);
}

TEST_CASE("construct_partition: guarantee holds on random capped distributions") {
    CounterRng rng(77);
    for (int m = 2; m <= 6; ++m) {
        for (double frac : {0.4, 0.9}) {
            const double gamma = frac / (m - 1.0);
            for (int rep = 0; rep < 300; ++rep) {
                const std::vector<double> masses = random_masses_with_cap(rng, gamma);
                const PartitionResult pr = construct_partition(masses, m, gamma);
                CHECK(pr.min_mass >= pr.guarantee - 1e-12);
                // cells cover every atom
                for (int cell : pr.cell_of_atom) CHECK(cell >= 0);
            }
        }
    }
}

TEST_CASE("multinomial_pmf_max_bound: exact enumeration vs the closed form") {
    const MultinomialMaxBound b1 = multinomial_pmf_max_bound(4, {0.5, 0.5});
    CHECK(b1.exact_max_pmf == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(b1.bound == doctest::Approx(1.12).epsilon(1e-12));
    CHECK(b1.argmax == std::vector<int>{2, 2});

    // n = 1: the pmf maximum is just the largest q_m
    const MultinomialMaxBound b2 = multinomial_pmf_max_bound(1, {0.2, 0.5, 0.3});
    CHECK(b2.exact_max_pmf == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b2.exact_max_pmf <= b2.bound);

    const MultinomialMaxBound b3 =
        multinomial_pmf_max_bound(10, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(b3.exact_max_pmf == doctest::Approx(4200.0 / 59049.0).epsilon(1e-12));
    CHECK(b3.bound == doctest::Approx(1.12 * 1.12 / std::sqrt(100.0 / 27.0)).epsilon(1e-12));
    CHECK(b3.exact_max_pmf <= b3.bound);

    CHECK_THROWS_AS(multinomial_pmf_max_bound(4, {0.5, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(multinomial_pmf_max_bound(4000, {0.25, 0.25, 0.25, 0.25}, 1000),
                    EnumerationLimitError);
}

TEST_CASE("multinomial bound sweep: a smaller version of the exhaustive suite") {
    for (int m : {2, 3, 4}) {
        for (int n : {1, 5, 12, 20}) {
            const MultinomialSuiteResult r = run_multinomial_suite(n, m, 50, 1234);
            CHECK(r.violations == 0);
            CHECK(r.worst_ratio <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("data_counts_bound_check: composition of partition and multinomial lemmas") {
    const DataCountsReport r1 = data_counts_bound_check(FiniteDistribution::uniform(2, 2), 6, 2);
    CHECK(r1.holds);
    CHECK(r1.exact_max_pmf <= r1.bound);

    const DataCountsReport tiny = data_counts_bound_check(FiniteDistribution::uniform(2, 2), 1, 2);
    CHECK(tiny.holds);

    // the deterministic-case instantiation M = 6 needs max mass < 1/5
    const DataCountsReport m6 = data_counts_bound_check(FiniteDistribution::uniform(2, 3), 8, 6);
    CHECK(m6.holds);
    CHECK(m6.partition.cell_mass.size() == 6);
}
