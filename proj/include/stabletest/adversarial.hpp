// Constructive machinery from the hardness proofs: the permutation-max
// wrapper A1, the triggered modifications of a base learner, the corrupted
// mixture distributions, and the instability bounds they satisfy.
#ifndef STABLETEST_ADVERSARIAL_HPP
#define STABLETEST_ADVERSARIAL_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "stabletest/compositions.hpp"
#include "stabletest/seed_region.hpp"
#include "stabletest/stability.hpp"

namespace stabletest {

enum class CorruptionKind { response_at_y, feature_at_x, feature_at_x_eval };

// Base distribution blended with a point-mass component at weight c:
// response corruption keeps the X marginal (P_X x delta_y), feature
// corruption keeps the Y marginal (delta_x x P_Y).
struct MixtureDistribution {
    FiniteDistribution base;
    CorruptionKind kind = CorruptionKind::response_at_y;
    int atom = 0;      // the y (response kinds) or x (feature kinds) being planted
    double weight = 0.0;

    FiniteDistribution materialize() const;
};

FiniteDistribution corrupted_mixture(const FiniteDistribution& base, CorruptionKind kind,
                                     int atom, double c);

// A1(D; xi)(x) = 1 + epsilon + max over the |D| leave-one-out fits of the
// base learner at x, all sharing xi. Equals the max over all
// permute-then-drop-last datasets for symmetric bases, which is the only
// kind accepted.
FittedModel a1_model(const Learner& base, const Dataset& data, const RandomSeed& seed,
                     double epsilon);

// An M-cell partition of the joint space, one cell id per (x,y) atom.
class JointPartition {
public:
    JointPartition(int x_size, int y_size, std::vector<int> cell_of_atom, int cells);

    int x_size() const { return x_size_; }
    int y_size() const { return y_size_; }
    int cells() const { return cells_; }
    int cell_of(int x, int y) const;

private:
    int x_size_;
    int y_size_;
    std::vector<int> cell_of_atom_;
    int cells_;
};

// Histogram of a dataset over the partition cells; lives in I_{n,M}.
std::vector<int> count_vector(const Dataset& data, const JointPartition& partition);

struct ResponseTrigger {
    int y;
};
struct FeatureTrigger {
    int x;
};
// Fires when x is in the training set, or at prediction time when the model
// is evaluated at x itself.
struct FeatureEvalTrigger {
    int x;
};
struct SeedTrigger {
    SeedRegion region;
};
struct CountTrigger {
    JointPartition partition;
    std::vector<std::uint8_t> mask;  // indexed by CompositionIndex rank
};

using TriggerKind =
    std::variant<ResponseTrigger, FeatureTrigger, FeatureEvalTrigger, SeedTrigger, CountTrigger>;

// The modified algorithm A': dispatches to a1_model on triggered size-n
// inputs and to the base learner otherwise (bit-identical output there).
struct AdversarialWrap {
    TriggerKind trigger;
    int n = 1;           // trigger requires |D| == n
    double epsilon = 0.0;
};

Learner wrap(const Learner& base, const AdversarialWrap& spec);

// The proofs' lower bounds on the instability of (A', P') given the base
// triple's instability delta_star.
double instability_lower_bound(CorruptionKind kind, double c, int n, double delta_star);

// Smallest corruption weight that provably makes (A', P', n) non-stable at
// level delta, per the corresponding proof inequality.
double critical_c(CorruptionKind kind, int n, double delta, double delta_star);

// f(xi): the instability probability conditional on the seed, exact over
// the data enumeration.
double seed_conditional_instability(const Learner& learner, const FiniteDistribution& dist, int n,
                                    double epsilon, const RandomSeed& xi,
                                    const ExactOptions& opts = {});

// Same quantity by Monte-Carlo over the data, for learners or spaces the
// exact enumerator cannot handle.
double seed_conditional_instability_mc(const Learner& learner, const FiniteDistribution& dist,
                                       int n, double epsilon, const RandomSeed& xi,
                                       std::uint64_t trials, std::uint64_t key);

// Leb(R) + (1 - Leb(R)) E[f(xi) | xi not in R], evaluated bucket by bucket;
// the seed-trigger construction is provably non-stable when this exceeds
// delta.
double btrain_condition(const Learner& learner, const FiniteDistribution& dist, int n,
                        double epsilon, const SeedRegion& region, const ExactOptions& opts = {});

struct DeterministicConstructionReport {
    double rho = 0.0;
    std::vector<std::uint8_t> mask;          // the sampled q
    std::vector<double> stable_by_count;     // p_i = P{stable and c(D_n) = i}
    double untriggered_stable_sum = 0.0;     // sum_i (1 - q_i) p_i
    double exact_stable = 0.0;               // exact stable probability of A'_q
    double exact_instability = 0.0;
    double identity_gap = 0.0;               // |sum - exact_stable|
};

// Samples q_i iid Bernoulli(rho), builds A'_q, and verifies the identity
// P{stable under A'_q} = sum_i (1 - q_i) p_i by exact enumeration.
DeterministicConstructionReport deterministic_construction_check(
    const Learner& base, const FiniteDistribution& dist, int n, const JointPartition& partition,
    double epsilon, double rho, const RandomSeed& seed, const ExactOptions& opts = {});

// The rho the deterministic-case proof sets: (delta - delta_star + 1/n) /
// (1 - delta_star).
double deterministic_construction_rho(double delta, double delta_star, int n);

}  // namespace stabletest

#endif  // STABLETEST_ADVERSARIAL_HPP
