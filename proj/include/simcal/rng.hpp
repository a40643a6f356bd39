#pragma once

#include <cstdint>

#include "simcal/linalg.hpp"

namespace simcal {

// xoshiro256++ seeded through splitmix64. The raw stream uses only 64-bit
// integer arithmetic, so a given seed produces the same sequence on every
// platform. Double-valued outputs are fixed transforms of that stream and
// replay bit-for-bit from the seed.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0,1), built from the top 53 bits of next_u64().
    double next_double();

    // Uniform integer in [0, bound). Uses a plain modulo; the bias is
    // irrelevant at the bounds involved here and keeps the stream trivial
    // to replay.
    std::uint64_t next_below(std::uint64_t bound);

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

// n uniform samples in [lo, hi). Hard error if lo >= hi.
Vector rng_uniform(SeededRng& rng, double lo, double hi, std::size_t n);

// n Gaussian samples via Box-Muller with a fixed pairing convention: each
// pair of uniforms (u1, u2) yields r = sqrt(-2 ln(1-u1)) and the two
// samples r*cos(2*pi*u2), r*sin(2*pi*u2), consumed in that order; for odd
// n the final sine sample is discarded. sd == 0 returns n copies of mean
// (the stream is still consumed). Hard error if sd < 0.
Vector rng_normal(SeededRng& rng, double mean, double sd, std::size_t n);

// Deterministic sub-stream seed for a purpose tag, so one user-facing seed
// can drive several independent generators.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace simcal
