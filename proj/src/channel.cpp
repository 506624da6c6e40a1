#include "gridcast/channel.hpp"

#include <cmath>

#include "gridcast/kernels.hpp"
#include "gridcast/rng.hpp"

namespace gridcast {

double path_loss_db(NodeKind kind, double distance_m, double penetration_db) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    const double base = (kind == NodeKind::Enb)
                            ? 128.1 + 37.6 * std::log10(distance_m / 1000.0)
                            : 37.0 + 30.0 * std::log10(distance_m);
    return base + penetration_db;
}

ChannelState realize_channel(const Scenario& scenario, std::uint64_t seed) {
    const SimConfig& cfg = scenario.config;
    const int num_nodes = scenario.num_nodes();
    const int K = cfg.num_users;
    const int N = cfg.num_subchannels;

    ChannelState ch;
    ch.num_nodes = num_nodes;
    ch.num_users = K;
    ch.num_subchannels = N;
    ch.noise_power_w = std::pow(10.0, (cfg.noise_psd_dbm_hz + cfg.noise_figure_ue_db) / 10.0) /
                       1000.0 * cfg.subchannel_bandwidth_hz;
    ch.gain.resize(static_cast<std::size_t>(num_nodes) * K * N);
    ch.snr.resize(ch.gain.size());
    ch.avg_snr.resize(static_cast<std::size_t>(num_nodes) * K);

    auto shadow_rng = Xoshiro256pp::substream(seed, kStreamShadowing);
    auto fading_rng = Xoshiro256pp::substream(seed, kStreamFastFading);

    for (int i = 0; i < num_nodes; ++i) {
        const NodeKind kind = (i == 0) ? NodeKind::Enb : NodeKind::Sn;
        const double tx_gain_db =
            (kind == NodeKind::Enb) ? cfg.antenna_gain_enb_db : cfg.antenna_gain_sn_db;
        const double penetration_db =
            (kind == NodeKind::Enb) ? cfg.enb_penetration_db : cfg.sn_penetration_db;
        for (int k = 0; k < K; ++k) {
            const double d = distance(scenario.node_positions[i], scenario.user_positions[k]);
            const double shadow_db = cfg.shadowing_std_db * shadow_rng.next_normal();
            const double budget_db =
                tx_gain_db - path_loss_db(kind, d, penetration_db) - shadow_db;
            const double h_slow = std::pow(10.0, budget_db / 10.0);

            double* gain_row = ch.gain.data() + ch.row_offset(i, k);
            double* snr_row = ch.snr.data() + ch.row_offset(i, k);
            if (cfg.fast_fading_enabled) {
                for (int j = 0; j < N; ++j) gain_row[j] = fading_rng.next_exponential();
                kernels::scale(gain_row, gain_row, h_slow, N);
            } else {
                for (int j = 0; j < N; ++j) gain_row[j] = h_slow;
            }
            kernels::divide(snr_row, gain_row, ch.noise_power_w, N);
            ch.avg_snr[static_cast<std::size_t>(i) * K + k] = kernels::sum(snr_row, N) / N;
        }
    }
    return ch;
}

MinSnr min_snr(const ChannelState& channel, int node, std::span<const int> users) {
    if (users.empty()) throw std::invalid_argument("min_snr: empty user set");
    const std::size_t n = channel.num_subchannels;

    MinSnr out;
    const auto first = channel.snr_row(node, users[0]);
    out.per_subchannel.assign(first.begin(), first.end());
    out.average_form = channel.avg(node, users[0]);
    for (std::size_t u = 1; u < users.size(); ++u) {
        kernels::min_inplace(out.per_subchannel.data(), channel.snr_row(node, users[u]).data(), n);
        out.average_form = std::min(out.average_form, channel.avg(node, users[u]));
    }
    return out;
}

}  // namespace gridcast
