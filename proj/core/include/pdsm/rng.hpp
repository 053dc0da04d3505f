#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pdsm {

// Seeded random stream with platform-independent draws. The engine is
// std::mt19937_64 (its output sequence is fixed by the standard); the
// distributions are implemented here because the standard ones are not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for a named purpose under a master seed.
    static Rng derive(std::uint64_t master_seed, std::string_view label);

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);
    bool chance(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pdsm
