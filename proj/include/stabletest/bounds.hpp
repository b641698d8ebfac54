// Closed-form power ceilings for budgeted black-box stability tests, plus
// the constructive partition and multinomial-pmf lemmas behind the
// deterministic-case bound.
#ifndef STABLETEST_BOUNDS_HPP
#define STABLETEST_BOUNDS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stabletest/distribution.hpp"

namespace stabletest {

// A space cardinality that may be infinite, so unlimited-budget displays
// fall out of the same formulas as limits.
class SpaceSize {
public:
    static SpaceSize infinite() { return SpaceSize(true, 0); }
    static SpaceSize finite(std::uint64_t count) { return SpaceSize(false, count); }

    bool is_infinite() const { return infinite_; }
    std::uint64_t count() const { return count_; }

    // min(budget / |space|, 1); 0 for an infinite space.
    double budget_fraction(double budget) const {
        if (infinite_) return 0.0;
        const double f = budget / static_cast<double>(count_);
        return f < 1.0 ? f : 1.0;
    }

private:
    SpaceSize(bool inf, std::uint64_t count) : infinite_(inf), count_(count) {}
    bool infinite_;
    std::uint64_t count_;
};

struct PowerBoundInputs {
    double alpha = 0.05;
    double epsilon = 0.0;
    double delta = 0.0;
    double delta_star = 0.0;
    int n = 1;
    double n_labeled = 0.0;
    double n_unlabeled = 0.0;
    double b_train = 0.0;  // +infinity expresses an unlimited budget
    double b_eval = 0.0;
    SpaceSize x_size = SpaceSize::infinite();
    SpaceSize y_size = SpaceSize::infinite();
    // Needed only by the deterministic-case bound (its < 0.2 condition).
    std::optional<double> max_point_mass;

    double delta_tilde() const {
        const double v = delta + 1.0 / static_cast<double>(n);
        return v < 1.0 ? v : 1.0;
    }
    void validate() const;
};

struct Theorem1Bound {
    double train_term = 0.0;  // computational constraint
    double y_term = 0.0;      // statistical constraint from limited Y data
    double x_term = 0.0;      // statistical constraint from limited X data
    double minimum = 0.0;
    bool x_term_degenerate = false;  // delta_tilde == 1
};

Theorem1Bound theorem1_bound(const PowerBoundInputs& in);

struct Theorem2Bound {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool applicable = false;
    std::string reason;  // empty when applicable
};

// Deterministic-algorithm computational bound; C is the unspecified
// universal constant and must be supplied by configuration.
Theorem2Bound theorem2_bound(const PowerBoundInputs& in, double c_constant);

struct Theorem3Bound {
    Theorem1Bound transparent;
    double eval_term = 0.0;  // constraint from the model-evaluation budget
    double minimum = 0.0;
};

Theorem3Bound theorem3_bound(const PowerBoundInputs& in);

// ---- constructive appendix lemmas, on discrete distributions given as
// ---- atom masses (nonnegative, summing to 1)

struct PartitionResult {
    std::vector<int> cell_of_atom;
    std::vector<double> cell_mass;
    double min_mass = 0.0;
    double guarantee = 0.0;  // min{1/(2M-1), 1-(M-1)gamma}
};

// Greedy prefix of atoms sorted by descending mass with gamma/2 <= P(C) <=
// gamma; requires max mass <= gamma.
std::vector<int> partition_prefix(const std::vector<double>& masses, double gamma);

// M cells with min mass >= min{1/(2M-1), 1-(M-1)gamma}, built by recursion:
// extract a prefix cell at max{gamma, 2/(2M-1)}, condition on the rest,
// recurse with M-1 cells. Requires gamma >= max mass and gamma < 1/(M-1).
PartitionResult construct_partition(const std::vector<double>& masses, int m_cells, double gamma);

struct MultinomialMaxBound {
    double exact_max_pmf = 0.0;
    double bound = 0.0;  // C_M / sqrt(n^{M-1} prod q_m), C_M = 1.12^{M-1}
    std::vector<int> argmax;
};

// Exhaustive max of the Multinomial(n, q) pmf over I_{n,M} against the
// closed-form bound; requires every q_m > 0 and |I_{n,M}| within the cap.
MultinomialMaxBound multinomial_pmf_max_bound(int n, const std::vector<double>& q,
                                              std::uint64_t cap = 10'000'000);

struct DataCountsReport {
    PartitionResult partition;
    double exact_max_pmf = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// Composition of the two lemmas: partition the joint atoms of dist at gamma
// = max point mass, then check the count-vector pmf bound for size-n
// datasets.
DataCountsReport data_counts_bound_check(const FiniteDistribution& dist, int n, int m_cells);

}  // namespace stabletest

#endif  // STABLETEST_BOUNDS_HPP
