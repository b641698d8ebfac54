// The set I_{n,M} of nonnegative integer M-vectors summing to n, in
// lexicographic order, with O(n*M) ranking and unranking.
#ifndef STABLETEST_COMPOSITIONS_HPP
#define STABLETEST_COMPOSITIONS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabletest/stability.hpp"

namespace stabletest {

// C(total + parts - 1, parts - 1), saturating at UINT64_MAX.
inline std::uint64_t compositions_count(std::uint64_t total, int parts) {
    std::uint64_t result = 1;
    for (int i = 1; i < parts; ++i) {
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(result) * (total + static_cast<std::uint64_t>(i));
        const unsigned __int128 next = wide / static_cast<std::uint64_t>(i);
        if (next > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
        result = static_cast<std::uint64_t>(next);
    }
    return result;
}

class CompositionIndex {
public:
    CompositionIndex(int n, int parts, std::uint64_t cap = 10'000'000)
        : n_(n), parts_(parts) {
        if (n_ < 0 || parts_ < 1) {
            throw std::invalid_argument("CompositionIndex: n >= 0 and parts >= 1 required");
        }
        size_ = compositions_count(static_cast<std::uint64_t>(n_), parts_);
        if (size_ > cap) {
            throw EnumerationLimitError("CompositionIndex: |I_{n,M}| exceeds the cap");
        }
    }

    int n() const { return n_; }
    int parts() const { return parts_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t rank(const std::vector<int>& counts) const {
        if (counts.size() != static_cast<std::size_t>(parts_)) {
            throw std::invalid_argument("CompositionIndex::rank: wrong length");
        }
        int remaining = n_;
        std::uint64_t r = 0;
        for (int j = 0; j < parts_ - 1; ++j) {
            const int cj = counts[static_cast<std::size_t>(j)];
            if (cj < 0 || cj > remaining) {
                throw std::invalid_argument("CompositionIndex::rank: not a composition of n");
            }
            for (int t = 0; t < cj; ++t) {
                r += compositions_count(static_cast<std::uint64_t>(remaining - t), parts_ - j - 1);
            }
            remaining -= cj;
        }
        if (counts.back() != remaining) {
            throw std::invalid_argument("CompositionIndex::rank: not a composition of n");
        }
        return r;
    }

    std::vector<int> at(std::uint64_t rank) const {
        if (rank >= size_) throw std::out_of_range("CompositionIndex::at");
        std::vector<int> counts(static_cast<std::size_t>(parts_), 0);
        int remaining = n_;
        for (int j = 0; j < parts_ - 1; ++j) {
            int cj = 0;
            while (true) {
                const std::uint64_t block =
                    compositions_count(static_cast<std::uint64_t>(remaining - cj), parts_ - j - 1);
                if (rank < block) break;
                rank -= block;
                ++cj;
            }
            counts[static_cast<std::size_t>(j)] = cj;
            remaining -= cj;
        }
        counts.back() = remaining;
        return counts;
    }

private:
    int n_;
    int parts_;
    std::uint64_t size_ = 0;
};

}  // namespace stabletest

#endif  // STABLETEST_COMPOSITIONS_HPP
