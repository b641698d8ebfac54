#include "stabletest/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabletest {

namespace {

std::vector<double> build_cdf(const std::vector<double>& p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    if (!cdf.empty()) cdf.back() = 1.0;
    return cdf;
}

int draw_index(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto i = static_cast<std::size_t>(it - cdf.begin());
    return static_cast<int>(i < cdf.size() ? i : cdf.size() - 1);
}

}  // namespace

FiniteDistribution::FiniteDistribution(int x_size, int y_size, std::vector<double> probs)
    : x_size_(x_size), y_size_(y_size), p_(std::move(probs)) {
    if (x_size_ <= 0 || y_size_ <= 0) {
        throw std::invalid_argument("FiniteDistribution: space sizes must be positive");
    }
    if (p_.size() != static_cast<std::size_t>(x_size_) * static_cast<std::size_t>(y_size_)) {
        throw std::invalid_argument("FiniteDistribution: probability table size mismatch");
    }
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw std::invalid_argument("FiniteDistribution: negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("FiniteDistribution: probabilities must sum to 1");
    }
    cdf_ = build_cdf(p_);
    cdf_x_ = build_cdf(marginal_x());
}

FiniteDistribution FiniteDistribution::uniform(int x_size, int y_size) {
    const std::size_t atoms = static_cast<std::size_t>(x_size) * static_cast<std::size_t>(y_size);
    return FiniteDistribution(x_size, y_size,
                              std::vector<double>(atoms, 1.0 / static_cast<double>(atoms)));
}

FiniteDistribution FiniteDistribution::point_mass(int x_size, int y_size, int x, int y) {
    std::vector<double> p(static_cast<std::size_t>(x_size) * y_size, 0.0);
    p[static_cast<std::size_t>(x) * y_size + y] = 1.0;
    return FiniteDistribution(x_size, y_size, std::move(p));
}

std::vector<double> FiniteDistribution::marginal_x() const {
    std::vector<double> mx(x_size_, 0.0);
    for (int x = 0; x < x_size_; ++x) {
        for (int y = 0; y < y_size_; ++y) mx[x] += prob(x, y);
    }
    return mx;
}

std::vector<double> FiniteDistribution::marginal_y() const {
    std::vector<double> my(y_size_, 0.0);
    for (int x = 0; x < x_size_; ++x) {
        for (int y = 0; y < y_size_; ++y) my[y] += prob(x, y);
    }
    return my;
}

double FiniteDistribution::max_point_mass() const {
    return *std::max_element(p_.begin(), p_.end());
}

DataPoint FiniteDistribution::sample_point(double u) const {
    const int atom = draw_index(cdf_, u);
    return DataPoint{atom / y_size_, atom % y_size_};
}

int FiniteDistribution::sample_feature(double u) const { return draw_index(cdf_x_, u); }

Dataset sample_dataset(const FiniteDistribution& dist, int n, const RandomSeed& seed) {
    if (n < 0) throw std::invalid_argument("sample_dataset: n must be nonnegative");
    std::vector<DataPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts.push_back(dist.sample_point(seed.draw(static_cast<std::uint64_t>(i) + 1)));
    }
    return Dataset(std::move(pts));
}

std::vector<int> sample_features(const FiniteDistribution& dist, int n, const RandomSeed& seed) {
    if (n < 0) throw std::invalid_argument("sample_features: n must be nonnegative");
    std::vector<int> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs.push_back(dist.sample_feature(seed.draw(static_cast<std::uint64_t>(i) + 1)));
    }
    return xs;
}

}  // namespace stabletest
