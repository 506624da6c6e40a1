#pragma once

#include <cstdint>
#include <vector>

#include "gridcast/mat.hpp"

namespace gridcast {

enum class CaseLabel { I, II, III };

const char* to_string(CaseLabel c);

// Which node serves which user.  Node 0 is the eNB; a user is covered when
// it holds the eNB or at least D serving nodes (constraint: beta_{0,k} +
// (#SNs of k)/D >= 1).
struct AssociationResult {
    int num_nodes = 0;
    int num_users = 0;
    int degree = 0;  // D
    std::vector<std::uint8_t> beta;           // (node, user), row-major
    std::vector<std::vector<int>> user_sets;  // per node, ascending
    std::vector<int> active_set;              // nodes with users, ascending
    std::vector<double> min_avg_snr;          // per node; NaN when inactive
    int dstar = 0;
    CaseLabel case_label = CaseLabel::I;

    // Step-3 diagnostics: sweeps executed and the membership total on entry,
    // which bounds them.
    int step3_sweeps = 0;
    int step3_initial_membership = 0;

    bool beta_at(int node, int user) const {
        return beta[static_cast<std::size_t>(node) * num_users + user] != 0;
    }
    bool enb_active() const;
    int active_sn_count() const;
    bool covers_all_users() const;  // the reconstruction constraint, per user
};

// Maximal-minimum-SNR association over the average SNR matrix (nodes x
// users; row 0 is the eNB).  Three passes:
//   1. per user, the D (or D+1 with the eNB) strongest nodes, keeping the
//      eNB alone unless the D best SNs jointly beat D times its SNR;
//   2. every chosen node is added as backup to users it hears better;
//   3. users that bottleneck one of their nodes and hold more coverage than
//      needed drop their worst-ranked bottleneck node, until stable.
// Ranking ties fall to the lower node index.  Requires at least D+1 rows and
// positive entries.
AssociationResult associate(const Mat2& avg_snr, int D);

// Candidate associations for the rate-aware pipeline: all users on the eNB
// first (the baseline), then the plain algorithm's result, then the
// three-pass scheme restricted to serving nodes only (pure offload).
// Duplicates (by beta) are removed keeping the earliest, so the order is a
// stable tie-break.
std::vector<AssociationResult> candidate_associations(const Mat2& avg_snr, int D);

// Rate-aware selection over candidate_associations under
// association_objective; returns the minimizer.  S is the per-fragment rate
// in bit/s, N the subchannel budget, B the subchannel bandwidth.
AssociationResult associate_rate_aware(const Mat2& avg_snr, int D, int N, double B, double S);

// Predicted total transmit power of an association under proportional
// spectrum split:  (N/D*) (2^(D* S/(N B)) - 1) (D [eNB active]/g_0 +
// sum_{active SNs} 1/g_i).
double association_objective(const AssociationResult& r, int N, double B, double S, int D);

// Whether moving traffic from a grid-drawing node to a green-surplus node
// pays off: saved power of the deficit node must exceed theta times the
// extra power of the surplus node.
bool offload_gain_check(double deficit_power_before_w, double deficit_power_after_w,
                        double surplus_power_before_w, double surplus_power_after_w,
                        double theta);

}  // namespace gridcast
