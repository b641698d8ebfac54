// Shared helpers for the test suites.
#ifndef STABLETEST_TESTS_TESTUTIL_HPP
#define STABLETEST_TESTS_TESTUTIL_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "stabletest/data.hpp"
#include "stabletest/rng.hpp"

namespace testutil {

inline double chi_square_pvalue(double stat, double dof) {
    if (dof <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

// Goodness-of-fit p-value of observed counts against expected probabilities,
// merging bins with expected count < 5 into their left neighbor.
inline double gof_pvalue(const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& probs, std::uint64_t total) {
    std::vector<double> expected;
    std::vector<double> observed;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = probs[i] * static_cast<double>(total);
        const double o = static_cast<double>(counts[i]);
        if (!expected.empty() && (e < 5.0 || expected.back() < 5.0)) {
            expected.back() += e;
            observed.back() += o;
        } else {
            expected.push_back(e);
            observed.push_back(o);
        }
    }
    if (expected.size() < 2) return 1.0;
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] <= 0.0) continue;
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return chi_square_pvalue(stat, static_cast<double>(expected.size() - 1));
}

inline stabletest::Dataset permuted(const stabletest::Dataset& data, stabletest::CounterRng& rng) {
    std::vector<stabletest::DataPoint> pts(data.begin(), data.end());
    for (std::size_t i = pts.size(); i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(pts[i - 1], pts[j]);
    }
    return stabletest::Dataset(std::move(pts));
}

}  // namespace testutil

#endif  // STABLETEST_TESTS_TESTUTIL_HPP
