#pragma once

#include <span>
#include <vector>

#include "gridcast/association.hpp"
#include "gridcast/channel.hpp"
#include "gridcast/gridflow.hpp"
#include "gridcast/powerplan.hpp"
#include "gridcast/spectrum.hpp"

namespace gridcast {

struct PipelineParams {
    int degree = 1;               // D
    double bandwidth_hz = 0.0;    // B
    double fragment_rate_bps = 0.0;  // S; node 0 carries D*S, SNs carry S
    double theta = 0.0;
    bool rate_aware_association = true;
};

struct PipelineResult {
    AssociationResult assoc;
    std::vector<double> target_rate_bps;      // per node
    std::vector<int> counts;                  // per node
    SpectrumPlan plan;
    std::vector<PowerAllocation> allocations; // per node; empty power vector when idle
    std::vector<double> node_power_w;
    FlowSettlement settlement;
};

// The full decision chain on one realized channel: association on average
// SNRs, subchannel counts, subchannel selection on per-subchannel worst-user
// SNRs, water-filling per node, then settlement.
PipelineResult run_pipeline(const ChannelState& channel, std::span<const double> energy_rates_w,
                            const PipelineParams& params);

// Baseline with every user on the eNB and the whole spectrum: water-fills
// rate D*S over all subchannels against the worst user, then settles with
// the same energy rates and theta.
PipelineResult run_baseline_all_enb(const ChannelState& channel,
                                    std::span<const double> energy_rates_w,
                                    const PipelineParams& params);

// Checks every constraint on a finished plan: rate targets to rel_tol,
// delta_i <= E_i, nonnegative credit balance, the subchannel partition, user
// coverage and nonnegative powers.  Throws std::runtime_error naming the
// first violation.
void verify_pipeline_constraints(const PipelineResult& result,
                                 std::span<const double> energy_rates_w,
                                 const PipelineParams& params, int num_subchannels,
                                 double rel_tol = 1e-9);

}  // namespace gridcast
