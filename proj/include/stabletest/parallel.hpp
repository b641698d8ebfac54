// Trial-level parallelism: each trial derives its own stream, so results do
// not depend on the worker count and merge as an associative sum.
#ifndef STABLETEST_PARALLEL_HPP
#define STABLETEST_PARALLEL_HPP

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace stabletest {

inline std::uint64_t parallel_count(std::uint64_t trials, int workers,
                                    const std::function<bool(std::uint64_t)>& trial) {
    if (workers < 1) workers = 1;
    if (workers == 1 || trials < 512) {
        std::uint64_t count = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            if (trial(t)) ++count;
        }
        return count;
    }
    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<std::uint64_t> counts(w, 0);
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::uint64_t i = 0; i < w; ++i) {
        threads.emplace_back([&, i] {
            const std::uint64_t lo = trials * i / w;
            const std::uint64_t hi = trials * (i + 1) / w;
            std::uint64_t count = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
                if (trial(t)) ++count;
            }
            counts[i] = count;
        });
    }
    for (auto& th : threads) th.join();
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return total;
}

}  // namespace stabletest

#endif  // STABLETEST_PARALLEL_HPP
