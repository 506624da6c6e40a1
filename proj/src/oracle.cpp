#include "gridcast/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "gridcast/gridflow.hpp"
#include "gridcast/kernels.hpp"
#include "gridcast/powerplan.hpp"
#include "gridcast/rng.hpp"

namespace gridcast {

void TinyInstance::validate() const {
    if (num_sns < 1 || num_sns > kMaxSns)
        throw std::invalid_argument("tiny instance: num_sns outside [1, 2]");
    if (num_users < 1 || num_users > kMaxUsers)
        throw std::invalid_argument("tiny instance: num_users outside [1, 3]");
    if (num_subchannels < 1 || num_subchannels > kMaxSubchannels)
        throw std::invalid_argument("tiny instance: num_subchannels outside [1, 4]");
    if (degree < 1 || degree > num_sns)
        throw std::invalid_argument("tiny instance: degree outside [1, num_sns]");
    if (static_cast<int>(energy_rates_w.size()) != num_sns + 1)
        throw std::invalid_argument("tiny instance: energy vector length mismatch");
    if (channel.num_nodes != num_sns + 1 || channel.num_users != num_users ||
        channel.num_subchannels != num_subchannels)
        throw std::invalid_argument("tiny instance: channel dimensions mismatch");
}

TinyInstance random_tiny_instance(std::uint64_t seed, int degree) {
    Xoshiro256pp rng(seed);
    TinyInstance t;
    t.degree = degree;
    t.num_sns = degree > 1 ? TinyInstance::kMaxSns
                           : 1 + static_cast<int>(rng.next_u64() % TinyInstance::kMaxSns);
    t.num_users = 1 + static_cast<int>(rng.next_u64() % TinyInstance::kMaxUsers);
    // Keep at least one subchannel per potentially active node.
    const int n_min = t.num_sns + 1;
    t.num_subchannels =
        n_min + static_cast<int>(rng.next_u64() % (TinyInstance::kMaxSubchannels - n_min + 1));
    t.bandwidth_hz = 1.0;
    t.fragment_rate_bps = 0.5 + 3.5 * rng.next_double();
    t.theta = rng.next_double();
    t.energy_rates_w.resize(t.num_sns + 1);
    for (auto& e : t.energy_rates_w) e = 3.0 * rng.next_double();

    ChannelState& ch = t.channel;
    ch.num_nodes = t.num_sns + 1;
    ch.num_users = t.num_users;
    ch.num_subchannels = t.num_subchannels;
    ch.noise_power_w = 1.0;
    ch.snr.resize(static_cast<std::size_t>(ch.num_nodes) * ch.num_users * ch.num_subchannels);
    for (auto& g : ch.snr) {
        // log-uniform over [1e-2, 1e2]
        g = std::pow(10.0, -2.0 + 4.0 * rng.next_double());
    }
    ch.gain = ch.snr;  // unit noise
    ch.avg_snr.resize(static_cast<std::size_t>(ch.num_nodes) * ch.num_users);
    for (int i = 0; i < ch.num_nodes; ++i) {
        for (int k = 0; k < ch.num_users; ++k) {
            ch.avg_snr[static_cast<std::size_t>(i) * ch.num_users + k] =
                kernels::sum(ch.snr_row(i, k).data(), ch.num_subchannels) / ch.num_subchannels;
        }
    }
    return t;
}

namespace {

// Water-filled power of one node for a given user mask and subchannel mask.
class PowerMemo {
  public:
    explicit PowerMemo(const TinyInstance& t) : t_(t) {}

    double power(int node, unsigned user_mask, unsigned sc_mask) {
        const std::uint64_t key = static_cast<std::uint64_t>(node) |
                                  (static_cast<std::uint64_t>(user_mask) << 8) |
                                  (static_cast<std::uint64_t>(sc_mask) << 24);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        std::vector<double> snrs;
        for (int j = 0; j < t_.num_subchannels; ++j) {
            if (!(sc_mask & (1u << j))) continue;
            double m = std::numeric_limits<double>::infinity();
            for (int k = 0; k < t_.num_users; ++k) {
                if (user_mask & (1u << k)) {
                    m = std::min(m, t_.channel.snr_row(node, k)[j]);
                }
            }
            snrs.push_back(m);
        }
        const double p =
            waterfill(snrs, t_.target_rate_bps(node), t_.bandwidth_hz).total_power_w;
        cache_.emplace(key, p);
        return p;
    }

  private:
    const TinyInstance& t_;
    std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace

OracleSolution solve_exact(const TinyInstance& instance) {
    instance.validate();
    const int num_nodes = instance.num_sns + 1;
    const int K = instance.num_users;
    const int N = instance.num_subchannels;

    // Per-user coverage options: the eNB, or at least D serving nodes.
    std::vector<unsigned> options;
    for (unsigned mask = 1; mask < (1u << num_nodes); ++mask) {
        const bool has_enb = mask & 1u;
        const int sns = std::popcount(mask >> 1);
        if (has_enb || sns >= instance.degree) options.push_back(mask);
    }

    PowerMemo memo(instance);
    OracleSolution best;
    best.best_total_ongrid_w = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> pick(K, 0);
    std::vector<double> node_power(num_nodes, 0.0);
    std::vector<int> alpha(N, 0);

    while (true) {
        // User masks per node for this assignment.
        std::vector<unsigned> users_of_node(num_nodes, 0);
        for (int k = 0; k < K; ++k) {
            const unsigned m = options[pick[k]];
            for (int i = 0; i < num_nodes; ++i) {
                if (m & (1u << i)) users_of_node[i] |= 1u << k;
            }
        }

        // All subchannel partitions (owner per subchannel).
        long combos = 1;
        for (int j = 0; j < N; ++j) combos *= num_nodes;
        for (long code = 0; code < combos; ++code) {
            long c = code;
            std::vector<unsigned> scs_of_node(num_nodes, 0);
            for (int j = 0; j < N; ++j) {
                const int owner = static_cast<int>(c % num_nodes);
                alpha[j] = owner;
                scs_of_node[owner] |= 1u << j;
                c /= num_nodes;
            }

            bool feasible = true;
            for (int i = 0; i < num_nodes && feasible; ++i) {
                if (users_of_node[i] != 0 && scs_of_node[i] == 0) feasible = false;
            }
            if (!feasible) continue;

            for (int i = 0; i < num_nodes; ++i) {
                node_power[i] = users_of_node[i] == 0
                                    ? 0.0
                                    : memo.power(i, users_of_node[i], scs_of_node[i]);
            }
            ++best.explored_count;

            const double total =
                ongrid_total_closed_form(node_power, instance.energy_rates_w, instance.theta);
            if (total < best.best_total_ongrid_w) {
                best.best_total_ongrid_w = total;
                best.best_beta.assign(static_cast<std::size_t>(num_nodes) * K, 0);
                for (int k = 0; k < K; ++k) {
                    const unsigned m = options[pick[k]];
                    for (int i = 0; i < num_nodes; ++i) {
                        if (m & (1u << i))
                            best.best_beta[static_cast<std::size_t>(i) * K + k] = 1;
                    }
                }
                best.best_alpha = alpha;
            }
        }

        // Next user assignment.
        int k = 0;
        while (k < K && ++pick[k] == options.size()) {
            pick[k] = 0;
            ++k;
        }
        if (k == K) break;
    }
    return best;
}

double certification_ratio(double heuristic_w, double oracle_w) {
    if (oracle_w == 0.0) {
        return heuristic_w == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return heuristic_w / oracle_w;
}

}  // namespace gridcast
