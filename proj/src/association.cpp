#include "gridcast/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridcast {

namespace {

constexpr int kNoRank = std::numeric_limits<int>::max();

struct StepState {
    int num_nodes = 0;
    int num_users = 0;
    int degree = 0;
    const Mat2* g = nullptr;
    std::vector<std::uint8_t> member;  // i in M_k, (node, user) row-major
    std::vector<int> rank;             // IX_i^k among allowed nodes, (node, user)

    bool in(int i, int k) const { return member[static_cast<std::size_t>(i) * num_users + k] != 0; }
    void set(int i, int k, bool v) {
        member[static_cast<std::size_t>(i) * num_users + k] = v ? 1 : 0;
    }
    int ix(int i, int k) const { return rank[static_cast<std::size_t>(i) * num_users + k]; }

    int sn_count(int k) const {
        int c = 0;
        for (int i = 1; i < num_nodes; ++i) c += in(i, k);
        return c;
    }
    bool over_provisioned(int k) const {
        return degree * (in(0, k) ? 1 : 0) + sn_count(k) > degree;
    }
};

// Descending-SNR node ranking for user k over the allowed set, ties to the
// lower node index.
void rank_nodes(StepState& st, const std::vector<int>& allowed, int k,
                std::vector<int>& order_buf) {
    order_buf = allowed;
    std::sort(order_buf.begin(), order_buf.end(), [&](int a, int b) {
        const double ga = st.g->at(a, k);
        const double gb = st.g->at(b, k);
        if (ga != gb) return ga > gb;
        return a < b;
    });
    for (std::size_t pos = 0; pos < order_buf.size(); ++pos) {
        st.rank[static_cast<std::size_t>(order_buf[pos]) * st.num_users + k] =
            static_cast<int>(pos) + 1;
    }
}

void recompute_min(const StepState& st, std::vector<double>& gamma_min) {
    gamma_min.assign(st.num_nodes, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < st.num_nodes; ++i) {
        double m = std::numeric_limits<double>::infinity();
        bool any = false;
        for (int k = 0; k < st.num_users; ++k) {
            if (st.in(i, k)) {
                m = std::min(m, st.g->at(i, k));
                any = true;
            }
        }
        if (any) gamma_min[i] = m;
    }
}

AssociationResult finish(const StepState& st, int sweeps, int initial_membership) {
    AssociationResult r;
    r.num_nodes = st.num_nodes;
    r.num_users = st.num_users;
    r.degree = st.degree;
    r.beta = st.member;
    r.user_sets.assign(st.num_nodes, {});
    for (int i = 0; i < st.num_nodes; ++i) {
        for (int k = 0; k < st.num_users; ++k) {
            if (st.in(i, k)) r.user_sets[i].push_back(k);
        }
        if (!r.user_sets[i].empty()) r.active_set.push_back(i);
    }
    recompute_min(st, r.min_avg_snr);

    const bool enb = !r.user_sets[0].empty();
    const int act_sns = static_cast<int>(r.active_set.size()) - (enb ? 1 : 0);
    r.dstar = (enb ? st.degree : 0) + act_sns;
    r.case_label = enb ? (act_sns > 0 ? CaseLabel::III : CaseLabel::I) : CaseLabel::II;
    r.step3_sweeps = sweeps;
    r.step3_initial_membership = initial_membership;
    return r;
}

// Runs the three association passes over the allowed node subset.  The
// allowed set must contain at least D SNs, or the eNB and at least D SNs.
AssociationResult three_pass(const Mat2& g, int D, const std::vector<int>& allowed) {
    StepState st;
    st.num_nodes = g.rows;
    st.num_users = g.cols;
    st.degree = D;
    st.g = &g;
    st.member.assign(static_cast<std::size_t>(g.rows) * g.cols, 0);
    st.rank.assign(st.member.size(), kNoRank);

    const bool enb_allowed = std::find(allowed.begin(), allowed.end(), 0) != allowed.end();
    const int K = g.cols;

    // Pass 1: strongest nodes per user.
    std::vector<int> order;
    for (int k = 0; k < K; ++k) {
        rank_nodes(st, allowed, k, order);
        if (enb_allowed && st.ix(0, k) <= D) {
            // eNB ranks inside the top D: weigh it against the D best SNs of
            // the top D+1 nodes.
            double sn_sum = 0.0;
            for (int pos = 0; pos < D + 1; ++pos) {
                if (order[pos] != 0) sn_sum += g.at(order[pos], k);
            }
            if (sn_sum > D * g.at(0, k)) {
                for (int pos = 0; pos < D + 1; ++pos) {
                    if (order[pos] != 0) st.set(order[pos], k, true);
                }
            } else {
                st.set(0, k, true);
            }
        } else {
            for (int pos = 0; pos < D; ++pos) st.set(order[pos], k, true);
        }
    }

    // Pass 2: spread chosen nodes to users they hear better, in user order.
    std::vector<int> snapshot;
    for (int k = 0; k < K; ++k) {
        snapshot.clear();
        for (int i = 0; i < st.num_nodes; ++i) {
            if (st.in(i, k)) snapshot.push_back(i);
        }
        for (int i : snapshot) {
            for (int k2 = 0; k2 < K; ++k2) {
                if (k2 == k) continue;
                if (g.at(i, k2) > g.at(i, k)) st.set(i, k2, true);
            }
        }
    }

    // Pass 3: trim over-provisioned bottleneck users.
    std::vector<double> gamma_min;
    recompute_min(st, gamma_min);

    int initial_membership = 0;
    for (auto b : st.member) initial_membership += b;

    auto bottleneck_nodes = [&](int k, std::vector<int>& out) {
        out.clear();
        for (int i = 0; i < st.num_nodes; ++i) {
            if (st.in(i, k) && g.at(i, k) == gamma_min[i]) out.push_back(i);
        }
    };

    int sweeps = 0;
    std::vector<int> stars;
    std::vector<int> mk_star;
    while (true) {
        stars.clear();
        for (int k = 0; k < K; ++k) {
            if (!st.over_provisioned(k)) continue;
            bottleneck_nodes(k, mk_star);
            if (!mk_star.empty()) stars.push_back(k);
        }
        if (stars.empty()) break;
        ++sweeps;
        if (sweeps > initial_membership + K + 1)
            throw std::logic_error("association: trim pass failed to terminate");

        for (int k : stars) {
            // Earlier drops in this sweep may have retired k's bottleneck
            // status; refresh and skip if so.
            bottleneck_nodes(k, mk_star);
            if (mk_star.empty()) continue;
            int worst = mk_star[0];
            for (int i : mk_star) {
                if (st.ix(i, k) > st.ix(worst, k)) worst = i;
            }
            if (worst == 0 && st.sn_count(k) < D) {
                // Without the eNB this user cannot reconstruct; keep only it.
                for (int i = 1; i < st.num_nodes; ++i) st.set(i, k, false);
            } else {
                st.set(worst, k, false);
            }
            recompute_min(st, gamma_min);
        }
    }

    return finish(st, sweeps, initial_membership);
}

AssociationResult all_on_enb(const Mat2& g, int D) {
    StepState st;
    st.num_nodes = g.rows;
    st.num_users = g.cols;
    st.degree = D;
    st.g = &g;
    st.member.assign(static_cast<std::size_t>(g.rows) * g.cols, 0);
    st.rank.assign(st.member.size(), kNoRank);
    for (int k = 0; k < g.cols; ++k) st.set(0, k, true);
    return finish(st, 0, 0);
}

void validate_matrix(const Mat2& g, int D) {
    if (g.rows < D + 1)
        throw std::invalid_argument("associate: need at least D+1 nodes (eNB plus D SNs)");
    if (g.cols < 1) throw std::invalid_argument("associate: no users");
    for (double x : g.v) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument("associate: SNR entries must be positive and finite");
    }
}

}  // namespace

const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
    }
    return "?";
}

bool AssociationResult::enb_active() const { return !user_sets.empty() && !user_sets[0].empty(); }

int AssociationResult::active_sn_count() const {
    return static_cast<int>(active_set.size()) - (enb_active() ? 1 : 0);
}

bool AssociationResult::covers_all_users() const {
    for (int k = 0; k < num_users; ++k) {
        int sns = 0;
        for (int i = 1; i < num_nodes; ++i) sns += beta_at(i, k);
        if (!beta_at(0, k) && sns < degree) return false;
    }
    return true;
}

AssociationResult associate(const Mat2& avg_snr, int D) {
    validate_matrix(avg_snr, D);
    std::vector<int> allowed(avg_snr.rows);
    for (int i = 0; i < avg_snr.rows; ++i) allowed[i] = i;
    AssociationResult r = three_pass(avg_snr, D, allowed);
    if (!r.covers_all_users())
        throw std::logic_error("associate: produced an uncovered user");
    return r;
}

std::vector<AssociationResult> candidate_associations(const Mat2& avg_snr, int D) {
    validate_matrix(avg_snr, D);

    std::vector<AssociationResult> candidates;
    candidates.push_back(all_on_enb(avg_snr, D));
    {
        std::vector<int> all(avg_snr.rows);
        for (int i = 0; i < avg_snr.rows; ++i) all[i] = i;
        candidates.push_back(three_pass(avg_snr, D, all));
    }
    {
        // Pure offload: every user on serving nodes only.
        std::vector<int> sns(avg_snr.rows - 1);
        for (int i = 1; i < avg_snr.rows; ++i) sns[i - 1] = i;
        candidates.push_back(three_pass(avg_snr, D, sns));
    }

    std::vector<AssociationResult> unique;
    for (auto& c : candidates) {
        bool seen = false;
        for (const auto& u : unique) {
            if (u.beta == c.beta) {
                seen = true;
                break;
            }
        }
        if (!seen) unique.push_back(std::move(c));
    }
    return unique;
}

AssociationResult associate_rate_aware(const Mat2& avg_snr, int D, int N, double B, double S) {
    std::vector<AssociationResult> candidates = candidate_associations(avg_snr, D);
    std::size_t best = 0;
    double best_value = association_objective(candidates[0], N, B, S, D);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
        const double value = association_objective(candidates[c], N, B, S, D);
        if (value < best_value) {
            best_value = value;
            best = c;
        }
    }
    return candidates[best];
}

double association_objective(const AssociationResult& r, int N, double B, double S, int D) {
    if (S == 0.0) return 0.0;
    double inv = 0.0;
    if (r.enb_active()) inv += D / r.min_avg_snr[0];
    for (int i : r.active_set) {
        if (i != 0) inv += 1.0 / r.min_avg_snr[i];
    }
    const double dstar = r.dstar;
    return (N / dstar) * (std::exp2(dstar * S / (N * B)) - 1.0) * inv;
}

bool offload_gain_check(double deficit_power_before_w, double deficit_power_after_w,
                        double surplus_power_before_w, double surplus_power_after_w,
                        double theta) {
    return (deficit_power_before_w - deficit_power_after_w) >
           (surplus_power_after_w - surplus_power_before_w) * theta;
}

}  // namespace gridcast
