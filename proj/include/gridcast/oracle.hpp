#pragma once

#include <cstdint>
#include <vector>

#include "gridcast/channel.hpp"

namespace gridcast {

// A problem instance small enough for exhaustive search over user
// assignments and subchannel partitions.
struct TinyInstance {
    static constexpr int kMaxSns = 2;
    static constexpr int kMaxSubchannels = 4;
    static constexpr int kMaxUsers = 3;

    int num_sns = 0;       // M
    int num_users = 0;     // K
    int num_subchannels = 0;  // N
    int degree = 1;        // D
    double bandwidth_hz = 1.0;
    double fragment_rate_bps = 0.0;  // S
    double theta = 0.0;
    std::vector<double> energy_rates_w;  // M+1
    ChannelState channel;                // per-subchannel SNRs and averages

    double target_rate_bps(int node) const {
        return node == 0 ? degree * fragment_rate_bps : fragment_rate_bps;
    }
    // Throws when the size guards or degree bound are violated.
    void validate() const;
};

// Deterministic random instance within the size guards.
TinyInstance random_tiny_instance(std::uint64_t seed, int degree = 1);

struct OracleSolution {
    std::vector<std::uint8_t> best_beta;  // (node, user), row-major
    std::vector<int> best_alpha;          // owner node per subchannel
    double best_total_ongrid_w = 0.0;
    long explored_count = 0;
};

// Exhaustive minimum of total on-grid power over every covering user
// assignment and every subchannel partition, with exact per-node
// water-filling and settlement on each combination.
OracleSolution solve_exact(const TinyInstance& instance);

// heuristic/oracle, with 0/0 defined as 1 and x/0 for x > 0 as +infinity.
double certification_ratio(double heuristic_w, double oracle_w);

}  // namespace gridcast
