#pragma once

#include <span>
#include <vector>

namespace gridcast {

// Result of rate-constrained water-filling over one node's subchannels.
// Indices in `active` refer to positions in the min-SNR vector handed to
// waterfill(); `power_w` is full length with zeros on inactive channels.
struct PowerAllocation {
    std::vector<int> active;
    std::vector<double> power_w;
    double water_level = 0.0;       // lambda
    double target_rate_bps = 0.0;
    double achieved_rate_bps = 0.0;
    double total_power_w = 0.0;
};

// Minimal-power allocation meeting  sum_j B log2(1 + P_j g_j) = target.
//
// On the active set A the water level is
//   lambda = (2^(target/B) / prod_{j in A} g_j)^(1/|A|),
// computed in the log2 domain; A is the fixed point of repeatedly dropping
// channels whose power lambda - 1/g_j would not be positive.  Throws if the
// SNR vector is empty with a positive target, if any SNR is nonpositive, or
// if the water level overflows a double (target far beyond representable
// powers).
PowerAllocation waterfill(std::span<const double> min_snrs, double target_rate_bps,
                          double bandwidth_hz);

// Total transmit power of a node carrying `target_rate_bps` on n equal-SNR
// subchannels, for n = 1..max_count:  P(n) = n (2^(target/(B n)) - 1) / g.
// Strictly decreasing and convex in n for a positive target.
std::vector<double> node_power_curve(double min_avg_snr, double target_rate_bps,
                                     double bandwidth_hz, int max_count);

}  // namespace gridcast
