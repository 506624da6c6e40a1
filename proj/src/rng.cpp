#include "gridcast/rng.hpp"

#include <cmath>

namespace gridcast {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
    // xoshiro state must not be all zero; SplitMix64 makes this all but
    // impossible, but the guard keeps the constructor total.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

Xoshiro256pp Xoshiro256pp::substream(std::uint64_t seed, std::uint64_t stream) {
    return Xoshiro256pp(seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Xoshiro256pp::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::next_normal() {
    const double u1 = next_double();
    const double u2 = next_double();
    // 1 - u1 lies in (0, 1], so the log argument is never zero.
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(kTwoPi * u2);
}

double Xoshiro256pp::next_exponential() {
    const double u = next_double();
    const double e = -std::log1p(-u);
    return e > 0x1.0p-53 ? e : 0x1.0p-53;
}

}  // namespace gridcast
