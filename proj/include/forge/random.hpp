#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace forge {

// Portable pseudo-random source. The whole draw sequence is a function of the
// 64-bit seed, so traces can be reproduced by other implementations:
//
//   state      xoshiro256** (Blackman & Vigna), four 64-bit words
//   seeding    the four words are consecutive outputs of splitmix64(seed)
//   next_u64   one xoshiro256** step
//   uniform    (next_u64() >> 11) * 2^-53, in [0, 1)
//   index(n)   rejection sampling: draw x until x >= (2^64 - n) % n, return x % n;
//              always consumes at least one word, even for n == 1
//   normal     Box-Muller without caching: u1 = uniform(), u2 = uniform(),
//              sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
//   derive     new seed = splitmix64 fold of (seed, tag0, tag1, ...)
//
// Only the normal draw goes through libm; everything else is exact integer
// arithmetic.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = 0);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();
    double uniform();
    double uniform(double lo, double hi);
    std::size_t index(std::size_t n);
    double normal();
    bool bernoulli(double p);

    // Independent stream for a sub-task, e.g. (repeat, fold).
    RandomSource derive(std::initializer_list<std::uint64_t> tags) const;
    static std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace forge
