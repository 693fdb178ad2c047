#pragma once

#include <cstdint>
#include <random>

namespace p2b {

inline constexpr std::uint64_t kDefaultSeed = 42;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic, splittable randomness. mt19937_64 is bit-exact across
// platforms and uniform draws use rejection sampling instead of
// std::uniform_int_distribution (whose output is implementation-defined),
// so identical seeds give identical streams everywhere. child(i) derives an
// independent stream from (seed, i); parallel and serial ensembles agree.
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : seed_(seed), gen_(detail::splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits() { return gen_(); }

    // Uniform in [0, n); n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    Rng child(std::uint64_t stream) const {
        return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(stream)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace p2b
