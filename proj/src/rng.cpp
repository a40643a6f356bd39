#include "simcal/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace simcal {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    return next_u64() % bound;
}

Vector rng_uniform(SeededRng& rng, double lo, double hi, std::size_t n) {
    if (!(lo < hi))
        throw std::invalid_argument("rng_uniform: lo (" + std::to_string(lo) +
                                    ") must be less than hi (" + std::to_string(hi) + ")");
    Vector out(n);
    for (auto& v : out) {
        v = lo + rng.next_double() * (hi - lo);
        if (v >= hi) v = std::nextafter(hi, lo);  // fp rounding guard at the top edge
    }
    return out;
}

Vector rng_normal(SeededRng& rng, double mean, double sd, std::size_t n) {
    if (sd < 0.0)
        throw std::invalid_argument("rng_normal: sd must be >= 0, got " + std::to_string(sd));
    Vector out;
    out.reserve(n);
    while (out.size() < n) {
        const double u1 = rng.next_double();
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));  // 1-u1 in (0,1]
        const double theta = 2.0 * std::numbers::pi * u2;
        out.push_back(mean + sd * (r * std::cos(theta)));
        if (out.size() < n) out.push_back(mean + sd * (r * std::sin(theta)));
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base ^ (0xA0761D6478BD642FULL * (stream + 1));
    return splitmix64(s);
}

}  // namespace simcal
