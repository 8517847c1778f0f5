#pragma once

// splitmix64-based generator with a fully specified layout, so searches are
// reproducible across platforms and parallel schedules (std engines leave
// uniform_real_distribution implementation-defined).

#include <cmath>
#include <cstdint>

namespace qnl {

struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed = 0) : state(seed + 0x9e3779b97f4a7c15ULL) {}

    // independent stream for candidate `index` under a top-level seed
    static Rng for_index(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed);
        r.state ^= (index + 1) * 0xbf58476d1ce4e5b9ULL;
        r.next();
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    bool coin() { return (next() & 1ULL) != 0; }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

} // namespace qnl
