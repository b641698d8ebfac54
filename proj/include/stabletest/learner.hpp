// The symmetric seed-randomized learner interface and its fitted models.
#ifndef STABLETEST_LEARNER_HPP
#define STABLETEST_LEARNER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stabletest/data.hpp"
#include "stabletest/rng.hpp"

namespace stabletest {

enum class Provenance { base, adversarial_a1, adversarial_wrapped };

// A fitted model over a finite feature space: one prediction per x.
class FittedModel {
public:
    FittedModel() = default;
    explicit FittedModel(std::vector<double> table, Provenance provenance = Provenance::base)
        : table_(std::move(table)), provenance_(provenance) {}

    double predict(int x) const {
        if (x < 0 || static_cast<std::size_t>(x) >= table_.size()) {
            throw std::out_of_range("FittedModel::predict: feature outside the space");
        }
        return table_[static_cast<std::size_t>(x)];
    }
    const std::vector<double>& table() const { return table_; }
    Provenance provenance() const { return provenance_; }

    FittedModel retagged(Provenance p) const { return FittedModel(table_, p); }

    friend bool operator==(const FittedModel& a, const FittedModel& b) {
        return a.table_ == b.table_ && a.provenance_ == b.provenance_;
    }
    friend bool operator!=(const FittedModel& a, const FittedModel& b) { return !(a == b); }

private:
    std::vector<double> table_;
    Provenance provenance_ = Provenance::base;
};

// How a learner consumes its random seed. `bucketed` means the output is
// constant on each interval of [0,1) delimited by seed_cuts(), which is what
// the exact enumeration oracle needs; `arbitrary` forces a Monte-Carlo
// fallback over seeds.
enum class SeedDependence { none, bucketed, arbitrary };

class Learner {
public:
    using FitFn = std::function<FittedModel(const Dataset&, const RandomSeed&)>;

    Learner(std::string name, FitFn fit, SeedDependence seed_dependence,
            std::vector<double> seed_cuts = {}, bool symmetric = true)
        : name_(std::move(name)),
          fit_(std::move(fit)),
          seed_dependence_(seed_dependence),
          seed_cuts_(std::move(seed_cuts)),
          symmetric_(symmetric) {}

    const std::string& name() const { return name_; }
    bool deterministic() const { return seed_dependence_ == SeedDependence::none; }
    bool symmetric() const { return symmetric_; }
    SeedDependence seed_dependence() const { return seed_dependence_; }

    // Interior breakpoints of the seed buckets, strictly inside (0,1).
    const std::vector<double>& seed_cuts() const { return seed_cuts_; }

    FittedModel fit(const Dataset& data, const RandomSeed& seed) const { return fit_(data, seed); }

private:
    std::string name_;
    FitFn fit_;
    SeedDependence seed_dependence_;
    std::vector<double> seed_cuts_;
    bool symmetric_;
};

// Seed buckets as (representative seed, probability mass) pairs.
std::vector<std::pair<RandomSeed, double>> seed_buckets(const Learner& learner);

}  // namespace stabletest

#endif  // STABLETEST_LEARNER_HPP
