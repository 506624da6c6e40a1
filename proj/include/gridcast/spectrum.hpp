#pragma once

#include <span>
#include <vector>

#include "gridcast/mat.hpp"

namespace gridcast {

// Working table for the greedy count allocation: per-node power versus
// subchannel count, plus the energy-adjusted column at the current counts.
struct PowerTable {
    std::vector<std::vector<double>> rows;  // rows[i][n-1] = P_i at n subchannels; empty if inactive
    std::vector<double> last_column;        // P_i at current count minus E_i; -inf if inactive

    void refresh(int node, int count, double energy_rate_w);
};

PowerTable build_power_table(std::span<const int> active, std::span<const double> min_avg_snr,
                             std::span<const double> target_rate_bps,
                             std::span<const double> energy_rates_w, int num_subchannels,
                             double bandwidth_hz);

// One subchannel for every active node, then the remaining N - |active| go
// one at a time to the node with the largest energy-adjusted power at its
// current count.  Ties fall to the lower node index.  Returns per-node
// counts (zero for inactive nodes).
std::vector<int> allocate_counts(std::span<const int> active,
                                 std::span<const double> min_avg_snr,
                                 std::span<const double> target_rate_bps,
                                 std::span<const double> energy_rates_w, int num_subchannels,
                                 double bandwidth_hz);

struct SpectrumPlan {
    std::vector<int> counts;                     // per node
    std::vector<std::vector<int>> assigned_sets; // per node, ascending subchannel ids

    int num_nodes() const { return static_cast<int>(counts.size()); }
    // alpha[i][j] as a dense indicator matrix.
    std::vector<std::vector<int>> alpha_matrix(int num_subchannels) const;
};

// Serves nodes in descending order of energy-adjusted power (P_i at its
// count minus E_i), each taking its count of highest-SNR subchannels from
// the remaining pool.  SNR ties fall to the lower subchannel index, priority
// ties to the lower node index.  counts must sum to the number of
// subchannels (the matrix column count).
SpectrumPlan select_subchannels(std::span<const int> counts, const Mat2& per_sc_min_snr,
                                std::span<const double> energy_rates_w,
                                std::span<const double> node_power_w);

}  // namespace gridcast
