// A finite union of half-open intervals [a,b) inside [0,1), with exact
// total length. Stands in for measurable seed sets R in the seed-triggered
// constructions.
#ifndef STABLETEST_SEED_REGION_HPP
#define STABLETEST_SEED_REGION_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stabletest {

class SeedRegion {
public:
    SeedRegion() = default;

    explicit SeedRegion(std::vector<std::pair<double, double>> intervals) {
        for (auto& [a, b] : intervals) {
            if (!(a >= 0.0 && b <= 1.0 && a <= b)) {
                throw std::invalid_argument("SeedRegion: intervals must satisfy 0 <= a <= b <= 1");
            }
        }
        std::sort(intervals.begin(), intervals.end());
        // merge overlaps so measure() is a plain sum
        for (auto& [a, b] : intervals) {
            if (a == b) continue;
            if (!intervals_.empty() && a <= intervals_.back().second) {
                intervals_.back().second = std::max(intervals_.back().second, b);
            } else {
                intervals_.emplace_back(a, b);
            }
        }
    }

    bool contains(double v) const {
        for (const auto& [a, b] : intervals_) {
            if (v >= a && v < b) return true;
        }
        return false;
    }

    double measure() const {
        double total = 0.0;
        for (const auto& [a, b] : intervals_) total += b - a;
        return total;
    }

    bool empty() const { return intervals_.empty(); }
    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }

private:
    std::vector<std::pair<double, double>> intervals_;
};

}  // namespace stabletest

#endif  // STABLETEST_SEED_REGION_HPP
