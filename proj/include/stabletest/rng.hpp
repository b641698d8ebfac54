// Counter-based deterministic randomness: RandomSeed (the scalar seed handed
// to a learner, plus its derived draws) and CounterRng (a splittable stream
// for simulation loops). Same seed bits => bit-identical derived draws.
#ifndef STABLETEST_RNG_HPP
#define STABLETEST_RNG_HPP

#include <cmath>
#include <cstdint>

namespace stabletest {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (b + kGolden + (a << 6) + (a >> 2)));
}

// 53-bit uniform in [0,1)
constexpr double to_unit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

}  // namespace detail

// A single random seed xi in [0,1], realized as 64 uniform bits. draw(k)
// yields auxiliary uniforms for learners that need more than one draw; they
// are a pure function of (bits, k), which is what makes seed coupling work.
class RandomSeed {
public:
    explicit constexpr RandomSeed(std::uint64_t bits) : bits_(bits) {}

    // Nearest representable seed with value() == v (up to 2^-53).
    static RandomSeed from_value(double v) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        const auto hi = static_cast<std::uint64_t>(std::llround(std::ldexp(v, 53)));
        return RandomSeed((hi >= (1ULL << 53) ? (1ULL << 53) - 1 : hi) << 11);
    }

    constexpr double value() const { return detail::to_unit(bits_); }
    constexpr double draw(std::uint64_t k) const {
        return detail::to_unit(detail::mix64(bits_ + k * detail::kGolden));
    }
    constexpr RandomSeed derive(std::uint64_t child) const {
        return RandomSeed(detail::hash_combine(bits_, child));
    }
    constexpr std::uint64_t bits() const { return bits_; }

    friend constexpr bool operator==(RandomSeed a, RandomSeed b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(RandomSeed a, RandomSeed b) { return a.bits_ != b.bits_; }

private:
    std::uint64_t bits_;
};

// Splittable counter stream. split(i) gives an independent stream, so a
// trial-indexed split yields results independent of worker count.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kGolden); }
    double next_unit() { return detail::to_unit(next_u64()); }

    // Unbiased integer in [0, n), n >= 1 (Lemire's method).
    std::uint64_t next_below(std::uint64_t n) {
        while (true) {
            const std::uint64_t x = next_u64();
            const auto m = static_cast<unsigned __int128>(x) * n;
            const auto lo = static_cast<std::uint64_t>(m);
            if (lo >= n || lo >= static_cast<std::uint64_t>(-n) % n) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

    RandomSeed next_seed() { return RandomSeed(next_u64()); }

    constexpr CounterRng split(std::uint64_t child) const {
        return CounterRng(detail::hash_combine(key_ ^ 0xd1b54a32d192ed03ULL, child));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace stabletest

#endif  // STABLETEST_RNG_HPP
