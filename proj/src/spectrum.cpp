#include "gridcast/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gridcast/powerplan.hpp"

namespace gridcast {

void PowerTable::refresh(int node, int count, double energy_rate_w) {
    last_column[node] = rows[node][count - 1] - energy_rate_w;
}

PowerTable build_power_table(std::span<const int> active, std::span<const double> min_avg_snr,
                             std::span<const double> target_rate_bps,
                             std::span<const double> energy_rates_w, int num_subchannels,
                             double bandwidth_hz) {
    const int num_nodes = static_cast<int>(min_avg_snr.size());
    const int max_count = num_subchannels - static_cast<int>(active.size()) + 1;

    PowerTable table;
    table.rows.assign(num_nodes, {});
    table.last_column.assign(num_nodes, -std::numeric_limits<double>::infinity());
    for (int i : active) {
        table.rows[i] =
            node_power_curve(min_avg_snr[i], target_rate_bps[i], bandwidth_hz, max_count);
        table.refresh(i, 1, energy_rates_w[i]);
    }
    return table;
}

std::vector<int> allocate_counts(std::span<const int> active,
                                 std::span<const double> min_avg_snr,
                                 std::span<const double> target_rate_bps,
                                 std::span<const double> energy_rates_w, int num_subchannels,
                                 double bandwidth_hz) {
    if (active.empty()) throw std::invalid_argument("allocate_counts: no active nodes");
    if (static_cast<int>(active.size()) > num_subchannels)
        throw std::invalid_argument("allocate_counts: more active nodes than subchannels");
    for (int i : active) {
        if (!(min_avg_snr[i] > 0.0))
            throw std::invalid_argument("allocate_counts: active node with nonpositive SNR");
    }

    PowerTable table = build_power_table(active, min_avg_snr, target_rate_bps, energy_rates_w,
                                         num_subchannels, bandwidth_hz);

    std::vector<int> counts(min_avg_snr.size(), 0);
    for (int i : active) counts[i] = 1;

    int remaining = num_subchannels - static_cast<int>(active.size());
    while (remaining > 0) {
        int best = active[0];
        for (int i : active) {
            if (table.last_column[i] > table.last_column[best]) best = i;
        }
        ++counts[best];
        table.refresh(best, counts[best], energy_rates_w[best]);
        --remaining;
    }
    return counts;
}

std::vector<std::vector<int>> SpectrumPlan::alpha_matrix(int num_subchannels) const {
    std::vector<std::vector<int>> alpha(counts.size(), std::vector<int>(num_subchannels, 0));
    for (std::size_t i = 0; i < assigned_sets.size(); ++i) {
        for (int j : assigned_sets[i]) alpha[i][j] = 1;
    }
    return alpha;
}

SpectrumPlan select_subchannels(std::span<const int> counts, const Mat2& per_sc_min_snr,
                                std::span<const double> energy_rates_w,
                                std::span<const double> node_power_w) {
    const int num_nodes = static_cast<int>(counts.size());
    const int N = per_sc_min_snr.cols;
    if (std::accumulate(counts.begin(), counts.end(), 0) != N)
        throw std::invalid_argument("select_subchannels: counts do not sum to the subchannel count");

    // Serving order: energy-adjusted power, high to low, computed once.
    std::vector<int> served;
    for (int i = 0; i < num_nodes; ++i) {
        if (counts[i] > 0) served.push_back(i);
    }
    std::stable_sort(served.begin(), served.end(), [&](int a, int b) {
        const double pa = node_power_w[a] - energy_rates_w[a];
        const double pb = node_power_w[b] - energy_rates_w[b];
        if (pa != pb) return pa > pb;
        return a < b;
    });

    std::vector<int> pool(N);
    std::iota(pool.begin(), pool.end(), 0);

    SpectrumPlan plan;
    plan.counts.assign(counts.begin(), counts.end());
    plan.assigned_sets.assign(num_nodes, {});

    std::vector<int> order;
    for (int i : served) {
        order = pool;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double ga = per_sc_min_snr.at(i, a);
            const double gb = per_sc_min_snr.at(i, b);
            if (ga != gb) return ga > gb;
            return a < b;
        });
        auto& mine = plan.assigned_sets[i];
        mine.assign(order.begin(), order.begin() + counts[i]);
        std::sort(mine.begin(), mine.end());
        std::vector<int> rest;
        rest.reserve(pool.size() - mine.size());
        for (int j : pool) {
            if (!std::binary_search(mine.begin(), mine.end(), j)) rest.push_back(j);
        }
        pool.swap(rest);
    }
    return plan;
}

}  // namespace gridcast
