#include "gridcast/powerplan.hpp"

#include <cmath>
#include <stdexcept>

#include "gridcast/kernels.hpp"

namespace gridcast {

PowerAllocation waterfill(std::span<const double> min_snrs, double target_rate_bps,
                          double bandwidth_hz) {
    const std::size_t n = min_snrs.size();
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("waterfill: bandwidth must be positive");
    if (!(target_rate_bps >= 0.0)) throw std::invalid_argument("waterfill: negative target rate");
    for (double g : min_snrs) {
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("waterfill: SNRs must be positive and finite");
    }

    PowerAllocation out;
    out.target_rate_bps = target_rate_bps;
    out.power_w.assign(n, 0.0);
    if (target_rate_bps == 0.0) return out;
    if (n == 0) throw std::invalid_argument("waterfill: positive target with no subchannels");

    std::vector<int> active(n);
    std::vector<double> snr(min_snrs.begin(), min_snrs.end());
    for (std::size_t j = 0; j < n; ++j) active[j] = static_cast<int>(j);

    const double rate_bits = target_rate_bps / bandwidth_hz;
    double lambda = 0.0;
    while (true) {
        const double log2_lambda =
            (rate_bits - kernels::sum_log2(snr.data(), snr.size())) / snr.size();
        lambda = std::exp2(log2_lambda);
        if (!std::isfinite(lambda))
            throw std::runtime_error("waterfill: water level overflows double");

        std::size_t kept = 0;
        for (std::size_t j = 0; j < snr.size(); ++j) {
            if (lambda - 1.0 / snr[j] > 0.0) {
                snr[kept] = snr[j];
                active[kept] = active[j];
                ++kept;
            }
        }
        if (kept == snr.size()) break;
        if (kept == 0)
            throw std::runtime_error("waterfill: no subchannel can carry positive power");
        snr.resize(kept);
        active.resize(kept);
    }

    out.active.assign(active.begin(), active.end());
    out.water_level = lambda;
    double total = 0.0;
    double achieved_bits = 0.0;
    for (std::size_t j = 0; j < active.size(); ++j) {
        const double p = lambda - 1.0 / snr[j];
        out.power_w[active[j]] = p;
        total += p;
        achieved_bits += std::log2(1.0 + p * snr[j]);
    }
    out.total_power_w = total;
    out.achieved_rate_bps = achieved_bits * bandwidth_hz;
    return out;
}

std::vector<double> node_power_curve(double min_avg_snr, double target_rate_bps,
                                     double bandwidth_hz, int max_count) {
    if (!(min_avg_snr > 0.0))
        throw std::invalid_argument("node_power_curve: SNR must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("node_power_curve: bandwidth must be positive");
    if (max_count < 1) throw std::invalid_argument("node_power_curve: max_count must be >= 1");

    std::vector<double> curve(max_count);
    for (int n = 1; n <= max_count; ++n) {
        curve[n - 1] = n * (std::exp2(target_rate_bps / (bandwidth_hz * n)) - 1.0) / min_avg_snr;
    }
    return curve;
}

}  // namespace gridcast
