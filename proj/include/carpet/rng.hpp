#pragma once

#include "carpet/rat.hpp"

#include <cstdint>

namespace carpet {

// splitmix64: tiny, seedable, and identical on every platform, which keeps
// sampled sweep reports byte-reproducible.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw input_error("Rng::below(0)");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Uniform rational in [0,1] with denominator exactly `den`.
    Rat rat_in_unit(std::uint64_t den) {
        return make_rat(Int(below(den + 1)), Int(den));
    }
};

}  // namespace carpet
