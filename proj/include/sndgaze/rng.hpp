#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sndgaze {

// Seeded RNG helpers. We draw from std::mt19937_64 directly instead of the
// <random> distributions so that sequences are identical across standard
// library implementations.

inline std::uint64_t rand_below(std::mt19937_64& gen, std::uint64_t n) {
    // rejection sampling, no modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = gen();
    } while (v >= limit);
    return v % n;
}

inline double rand_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double rand_normal(std::mt19937_64& gen) {
    // Box-Muller; second variate discarded to keep the stream stateless
    double u1 = rand_unit(gen);
    double u2 = rand_unit(gen);
    while (u1 <= 0.0) u1 = rand_unit(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

template <typename T>
void shuffle_seeded(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rand_below(gen, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace sndgaze
