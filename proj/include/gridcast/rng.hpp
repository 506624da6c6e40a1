#pragma once

#include <cstdint>

// Portable, seedable random streams.
//
// All sampled randomness in the simulator flows through Xoshiro256pp, a fixed
// integer algorithm (xoshiro256++) with fully specified float mappings, so a
// given (seed, stream) pair produces the same draws on every platform and
// compiler.  The standard library engines are avoided on purpose: the
// <random> distributions are implementation-defined.
//
// Streams: each sampled entity class reads from its own substream of the
// user-facing seed, so enabling or disabling one class (say fast fading)
// never perturbs the draws of another (say node placement).
//
//   stream 0  virtual SN-center position
//   stream 1  user positions
//   stream 2  shadowing draws
//   stream 3  fast-fading draws
//
// Substream derivation: the four xoshiro words are the first four outputs of
// SplitMix64 seeded with  seed XOR (stream + 1) * 0x9E3779B97F4A7C15.

namespace gridcast {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed);

    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_double();

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double next_normal();

    // Unit-mean exponential by inversion; clamped strictly positive.
    double next_exponential();

  private:
    std::uint64_t s_[4];
};

// Named streams for the simulator's entity classes.
enum : std::uint64_t {
    kStreamVirtualCenter = 0,
    kStreamUserPositions = 1,
    kStreamShadowing = 2,
    kStreamFastFading = 3,
};

}  // namespace gridcast
