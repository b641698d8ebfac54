// Data points and ordered datasets over finite integer-indexed spaces.
#ifndef STABLETEST_DATA_HPP
#define STABLETEST_DATA_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace stabletest {

// One labeled observation. x indexes the feature space, y indexes the
// response space; y doubles as the real embedding used when comparing
// predictions.
struct DataPoint {
    int x = 0;
    int y = 0;

    double y_real() const { return static_cast<double>(y); }
    friend bool operator==(DataPoint a, DataPoint b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(DataPoint a, DataPoint b) {
        return std::tie(a.x, a.y) < std::tie(b.x, b.y);
    }
};

// An ordered sequence of points. Learners treat it as a multiset; order is
// kept so that "remove the last point" is well defined.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<DataPoint> points) : points_(std::move(points)) {}

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const DataPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<DataPoint>& points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    void push_back(DataPoint p) { points_.push_back(p); }
    void pop_back() { points_.pop_back(); }

    Dataset without_last() const {
        if (points_.empty()) throw std::invalid_argument("Dataset::without_last: empty dataset");
        return Dataset(std::vector<DataPoint>(points_.begin(), points_.end() - 1));
    }

    Dataset without_index(std::size_t i) const {
        if (i >= points_.size()) throw std::out_of_range("Dataset::without_index");
        std::vector<DataPoint> rest;
        rest.reserve(points_.size() - 1);
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (j != i) rest.push_back(points_[j]);
        }
        return Dataset(std::move(rest));
    }

    std::vector<DataPoint> sorted_points() const {
        std::vector<DataPoint> s = points_;
        std::sort(s.begin(), s.end());
        return s;
    }

    bool contains_feature(int x) const {
        return std::any_of(points_.begin(), points_.end(),
                           [x](DataPoint p) { return p.x == x; });
    }
    bool contains_response(int y) const {
        return std::any_of(points_.begin(), points_.end(),
                           [y](DataPoint p) { return p.y == y; });
    }

    // Order-sensitive equality; use multiset_equal where the algorithm is
    // meant to be symmetric.
    friend bool operator==(const Dataset& a, const Dataset& b) { return a.points_ == b.points_; }

private:
    std::vector<DataPoint> points_;
};

inline bool multiset_equal(const Dataset& a, const Dataset& b) {
    return a.size() == b.size() && a.sorted_points() == b.sorted_points();
}

// FNV-1a over the point sequence; used as the trace's input-data identifier.
inline std::uint64_t dataset_fingerprint(const Dataset& d) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    eat(d.size());
    for (const DataPoint& p : d) {
        eat(static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)));
        eat(static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y)));
    }
    return h;
}

inline std::uint64_t feature_sequence_fingerprint(const std::vector<int>& xs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    eat(xs.size());
    for (int x : xs) eat(static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
    return h;
}

}  // namespace stabletest

#endif  // STABLETEST_DATA_HPP
