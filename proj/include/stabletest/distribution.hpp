// Finite joint distributions over X x Y with exact point-mass queries and
// seeded sampling.
#ifndef STABLETEST_DISTRIBUTION_HPP
#define STABLETEST_DISTRIBUTION_HPP

#include <vector>

#include "stabletest/data.hpp"
#include "stabletest/rng.hpp"

namespace stabletest {

class FiniteDistribution {
public:
    // probs is row-major: probs[x * y_size + y]. Must be nonnegative and sum
    // to 1 within 1e-12; violations are rejected at construction.
    FiniteDistribution(int x_size, int y_size, std::vector<double> probs);

    static FiniteDistribution uniform(int x_size, int y_size);
    static FiniteDistribution point_mass(int x_size, int y_size, int x, int y);

    int x_size() const { return x_size_; }
    int y_size() const { return y_size_; }
    int atom_count() const { return x_size_ * y_size_; }

    double prob(int x, int y) const { return p_[static_cast<std::size_t>(x) * y_size_ + y]; }
    const std::vector<double>& table() const { return p_; }

    std::vector<double> marginal_x() const;
    std::vector<double> marginal_y() const;
    double max_point_mass() const;

    // Inverse-CDF draws; one uniform per point.
    DataPoint sample_point(double u) const;
    int sample_feature(double u) const;  // from the X marginal

    DataPoint sample_point(CounterRng& rng) const { return sample_point(rng.next_unit()); }
    int sample_feature(CounterRng& rng) const { return sample_feature(rng.next_unit()); }

private:
    int x_size_;
    int y_size_;
    std::vector<double> p_;
    std::vector<double> cdf_;    // over joint atoms
    std::vector<double> cdf_x_;  // over the X marginal
};

// n i.i.d. points, reproducible from the seed (point i uses seed.draw(i+1)).
Dataset sample_dataset(const FiniteDistribution& dist, int n, const RandomSeed& seed);

// n i.i.d. feature draws from the X marginal.
std::vector<int> sample_features(const FiniteDistribution& dist, int n, const RandomSeed& seed);

}  // namespace stabletest

#endif  // STABLETEST_DISTRIBUTION_HPP
