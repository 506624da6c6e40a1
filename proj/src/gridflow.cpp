#include "gridcast/gridflow.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridcast {

FlowSettlement settle(std::span<const double> node_power_w,
                      std::span<const double> energy_rates_w, double theta) {
    const std::size_t n = node_power_w.size();
    if (energy_rates_w.size() != n)
        throw std::invalid_argument("settle: power and energy vectors differ in length");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("settle: theta must lie in [0, 1]");
    for (double p : node_power_w) {
        if (!(p >= 0.0)) throw std::invalid_argument("settle: negative node power");
    }

    FlowSettlement s;
    s.node_power_w.assign(node_power_w.begin(), node_power_w.end());
    s.delta_w.assign(n, 0.0);
    s.ongrid_w.assign(n, 0.0);

    double pool = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (node_power_w[i] < energy_rates_w[i]) {
            s.surplus_set.push_back(static_cast<int>(i));
            s.delta_w[i] = energy_rates_w[i] - node_power_w[i];
            pool += theta * s.delta_w[i];
        } else {
            s.deficit_set.push_back(static_cast<int>(i));
        }
    }

    double total = 0.0;
    for (int i : s.deficit_set) {
        const double deficit = node_power_w[i] - energy_rates_w[i];
        const double draw = std::min(deficit, pool);
        s.delta_w[i] = -draw;
        pool -= draw;
        s.ongrid_w[i] = deficit - draw;
        total += s.ongrid_w[i];
    }
    s.total_ongrid_w = total;
    return s;
}

double total_objective(const FlowSettlement& s) {
    double total = 0.0;
    for (double p : s.ongrid_w) total += p;
    return total;
}

double ongrid_total_closed_form(std::span<const double> node_power_w,
                                std::span<const double> energy_rates_w, double theta) {
    double value = 0.0;
    for (std::size_t i = 0; i < node_power_w.size(); ++i) {
        if (node_power_w[i] >= energy_rates_w[i]) {
            value += node_power_w[i] - energy_rates_w[i];
        } else {
            value += theta * (node_power_w[i] - energy_rates_w[i]);
        }
    }
    return std::max(0.0, value);
}

}  // namespace gridcast
