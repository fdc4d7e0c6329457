#ifndef GOODLINE_RAND_HPP
#define GOODLINE_RAND_HPP

#include <cstdint>
#include <random>

namespace goodline {

/// Uniform draw from [0, n) by rejection. std::uniform_int_distribution is
/// implementation-defined, so seeded runs would not replay across toolchains.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t max = ~std::uint64_t(0);
    std::uint64_t bound = max - max % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r < bound) return r % n;
    }
}

} // namespace goodline

#endif
