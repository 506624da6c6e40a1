#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridcast/scenario.hpp"

namespace gridcast {

enum class NodeKind { Enb, Sn };

// Distance-dependent loss in dB; d in meters.
//   eNB: 128.1 + 37.6 log10(d / 1000)
//   SN:  37 + 30 log10(d)
// plus any building-entry loss the link pays.
double path_loss_db(NodeKind kind, double distance_m, double penetration_db = 0.0);

// Per-link, per-subchannel linear power gains and normalized SNRs for one
// realization of shadowing and fast fading.  Layout is (node, user,
// subchannel) with the subchannel axis contiguous.  Immutable once built.
struct ChannelState {
    int num_nodes = 0;
    int num_users = 0;
    int num_subchannels = 0;
    std::vector<double> gain;     // h[i][k][j]
    std::vector<double> snr;      // gamma[i][k][j] = h / (N0 B)
    std::vector<double> avg_snr;  // mean over j of gamma[i][k]
    double noise_power_w = 0.0;

    std::size_t row_offset(int node, int user) const {
        return (static_cast<std::size_t>(node) * num_users + user) * num_subchannels;
    }
    std::span<const double> gain_row(int node, int user) const {
        return {gain.data() + row_offset(node, user), static_cast<std::size_t>(num_subchannels)};
    }
    std::span<const double> snr_row(int node, int user) const {
        return {snr.data() + row_offset(node, user), static_cast<std::size_t>(num_subchannels)};
    }
    double avg(int node, int user) const {
        return avg_snr[static_cast<std::size_t>(node) * num_users + user];
    }
};

// Shadowing: one zero-mean normal draw (sigma = shadowing_std_db) per
// (node, user) link from stream 2, constant across subchannels.  Fast
// fading: one unit-mean exponential power gain per (node, user, subchannel)
// from stream 3, applied only when fast_fading_enabled.  Deterministic for
// fixed (scenario, seed).
ChannelState realize_channel(const Scenario& scenario, std::uint64_t seed);

struct MinSnr {
    std::vector<double> per_subchannel;  // min over users, per subchannel
    double average_form = 0.0;           // min over users of the per-link average SNR
};

// Worst-user SNR of a node over a nonempty user set, in both the
// per-subchannel and the averaged form.
MinSnr min_snr(const ChannelState& channel, int node, std::span<const int> users);

}  // namespace gridcast
