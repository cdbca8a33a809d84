#include "forge/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace forge {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RandomSource::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomSource::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t RandomSource::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RandomSource::index: empty range");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) return static_cast<std::size_t>(x % bound);
    }
}

double RandomSource::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool RandomSource::bernoulli(double p) { return uniform() < p; }

std::uint64_t RandomSource::mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t sm = seed;
    std::uint64_t out = splitmix64(sm);
    for (std::uint64_t tag : tags) {
        sm = out ^ tag;
        out = splitmix64(sm);
    }
    return out;
}

RandomSource RandomSource::derive(std::initializer_list<std::uint64_t> tags) const {
    return RandomSource(mix_seed(seed_, tags));
}

}  // namespace forge
