#include "gridcast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gridcast {

namespace {

double power_at_count(double min_avg_snr, double target_rate_bps, double bandwidth_hz,
                      int count) {
    return count * (std::exp2(target_rate_bps / (bandwidth_hz * count)) - 1.0) / min_avg_snr;
}

Mat2 avg_matrix(const ChannelState& ch) {
    Mat2 g(ch.num_nodes, ch.num_users);
    g.v = ch.avg_snr;
    return g;
}

std::vector<double> targets_for(const AssociationResult& assoc, int num_nodes,
                                const PipelineParams& params) {
    std::vector<double> targets(num_nodes, 0.0);
    for (int i : assoc.active_set) {
        targets[i] = (i == 0) ? params.degree * params.fragment_rate_bps
                              : params.fragment_rate_bps;
    }
    return targets;
}

// Spectrum, power and settlement stages for one fixed association.
PipelineResult evaluate_association(const ChannelState& channel,
                                    std::span<const double> energy_rates_w,
                                    const PipelineParams& params, AssociationResult assoc) {
    const int num_nodes = channel.num_nodes;
    const int N = channel.num_subchannels;
    const double B = params.bandwidth_hz;

    PipelineResult r;
    r.assoc = std::move(assoc);
    r.target_rate_bps = targets_for(r.assoc, num_nodes, params);

    r.counts = allocate_counts(r.assoc.active_set, r.assoc.min_avg_snr, r.target_rate_bps,
                               energy_rates_w, N, B);

    Mat2 per_sc_min(num_nodes, N);
    std::vector<double> priority_power(num_nodes, 0.0);
    for (int i : r.assoc.active_set) {
        const MinSnr ms = min_snr(channel, i, r.assoc.user_sets[i]);
        std::copy(ms.per_subchannel.begin(), ms.per_subchannel.end(), per_sc_min.row(i));
        priority_power[i] =
            power_at_count(r.assoc.min_avg_snr[i], r.target_rate_bps[i], B, r.counts[i]);
    }

    r.plan = select_subchannels(r.counts, per_sc_min, energy_rates_w, priority_power);

    r.allocations.assign(num_nodes, {});
    r.node_power_w.assign(num_nodes, 0.0);
    std::vector<double> snr_on_assigned;
    for (int i : r.assoc.active_set) {
        snr_on_assigned.clear();
        for (int j : r.plan.assigned_sets[i]) snr_on_assigned.push_back(per_sc_min.at(i, j));
        r.allocations[i] = waterfill(snr_on_assigned, r.target_rate_bps[i], B);
        r.node_power_w[i] = r.allocations[i].total_power_w;
    }

    r.settlement = settle(r.node_power_w, energy_rates_w, params.theta);
    return r;
}

}  // namespace

PipelineResult run_pipeline(const ChannelState& channel, std::span<const double> energy_rates_w,
                            const PipelineParams& params) {
    const Mat2 g = avg_matrix(channel);

    if (!params.rate_aware_association) {
        return evaluate_association(channel, energy_rates_w, params,
                                    associate(g, params.degree));
    }

    // Candidate order is the tie-break: the all-on-eNB baseline sits first,
    // so at equal settled cost the pipeline stays with the baseline.
    std::vector<AssociationResult> candidates = candidate_associations(g, params.degree);

    bool have_best = false;
    PipelineResult best;
    std::exception_ptr first_error;
    for (auto& candidate : candidates) {
        try {
            PipelineResult r =
                evaluate_association(channel, energy_rates_w, params, std::move(candidate));
            if (!have_best || r.settlement.total_ongrid_w < best.settlement.total_ongrid_w) {
                best = std::move(r);
                have_best = true;
            }
        } catch (...) {
            // A candidate can overflow water-filling at extreme rates; it
            // simply loses the selection.
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (!have_best) std::rethrow_exception(first_error);
    return best;
}

PipelineResult run_baseline_all_enb(const ChannelState& channel,
                                    std::span<const double> energy_rates_w,
                                    const PipelineParams& params) {
    const int num_nodes = channel.num_nodes;
    const int N = channel.num_subchannels;

    PipelineResult r;
    r.assoc.num_nodes = num_nodes;
    r.assoc.num_users = channel.num_users;
    r.assoc.degree = params.degree;
    r.assoc.beta.assign(static_cast<std::size_t>(num_nodes) * channel.num_users, 0);
    r.assoc.user_sets.assign(num_nodes, {});
    for (int k = 0; k < channel.num_users; ++k) {
        r.assoc.beta[k] = 1;
        r.assoc.user_sets[0].push_back(k);
    }
    r.assoc.active_set = {0};
    r.assoc.min_avg_snr.assign(num_nodes, std::numeric_limits<double>::quiet_NaN());
    r.assoc.dstar = params.degree;
    r.assoc.case_label = CaseLabel::I;

    const MinSnr ms = min_snr(channel, 0, r.assoc.user_sets[0]);
    r.assoc.min_avg_snr[0] = ms.average_form;

    r.target_rate_bps.assign(num_nodes, 0.0);
    r.target_rate_bps[0] = params.degree * params.fragment_rate_bps;

    r.counts.assign(num_nodes, 0);
    r.counts[0] = N;
    r.plan.counts = r.counts;
    r.plan.assigned_sets.assign(num_nodes, {});
    for (int j = 0; j < N; ++j) r.plan.assigned_sets[0].push_back(j);

    r.allocations.assign(num_nodes, {});
    r.node_power_w.assign(num_nodes, 0.0);
    r.allocations[0] = waterfill(ms.per_subchannel, r.target_rate_bps[0], params.bandwidth_hz);
    r.node_power_w[0] = r.allocations[0].total_power_w;

    r.settlement = settle(r.node_power_w, energy_rates_w, params.theta);
    return r;
}

void verify_pipeline_constraints(const PipelineResult& result,
                                 std::span<const double> energy_rates_w,
                                 const PipelineParams& params, int num_subchannels,
                                 double rel_tol) {
    auto fail = [](const std::string& what) {
        throw std::runtime_error("pipeline constraint violated: " + what);
    };

    for (int i : result.assoc.active_set) {
        const double target = result.target_rate_bps[i];
        if (target > 0.0) {
            const double err =
                std::abs(result.allocations[i].achieved_rate_bps - target) / target;
            if (!(err <= rel_tol))
                fail("rate target missed on node " + std::to_string(i));
        }
    }

    const auto& s = result.settlement;
    double credit = 0.0;
    for (std::size_t i = 0; i < s.delta_w.size(); ++i) {
        if (s.delta_w[i] > energy_rates_w[i] + 1e-12)
            fail("delta exceeds green budget on node " + std::to_string(i));
        credit += s.delta_w[i] > 0.0 ? params.theta * s.delta_w[i] : s.delta_w[i];
    }
    if (credit < -1e-9) fail("credit balance negative");

    std::vector<int> owners(num_subchannels, 0);
    for (const auto& set : result.plan.assigned_sets) {
        for (int j : set) ++owners[j];
    }
    for (int j = 0; j < num_subchannels; ++j) {
        if (owners[j] != 1) fail("subchannel " + std::to_string(j) + " not assigned exactly once");
    }

    if (!result.assoc.covers_all_users()) fail("a user cannot reconstruct the file");

    for (const auto& alloc : result.allocations) {
        for (double p : alloc.power_w) {
            if (!(p >= 0.0)) fail("negative subchannel power");
        }
    }
}

}  // namespace gridcast
