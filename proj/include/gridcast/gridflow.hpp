#pragma once

#include <span>
#include <vector>

namespace gridcast {

// Outcome of settling green-energy exchanges through the grid credit system.
// delta_w[i] > 0 means node i injected that much green power into the grid;
// delta_w[i] < 0 means it drew that much using credit.
struct FlowSettlement {
    std::vector<double> node_power_w;
    std::vector<double> delta_w;
    std::vector<double> ongrid_w;
    double total_ongrid_w = 0.0;
    std::vector<int> surplus_set;  // P_i < E_i
    std::vector<int> deficit_set;  // P_i >= E_i
};

// Surplus nodes inject their whole residual (delta = E - P); the resulting
// credit pool theta * sum(injections) is granted to deficit nodes in
// ascending node order, each taking min(P - E, remaining pool).  The total
// matches the closed form in ongrid_total_closed_form.  Ties P == E count as
// deficit with zero draw.
FlowSettlement settle(std::span<const double> node_power_w,
                      std::span<const double> energy_rates_w, double theta);

// Sum of per-node on-grid power; equals total_ongrid_w.
double total_objective(const FlowSettlement& s);

// max{0, sum_{P>=E} P + theta sum_{P<E} P - sum_{P>=E} E - theta sum_{P<E} E}
double ongrid_total_closed_form(std::span<const double> node_power_w,
                                std::span<const double> energy_rates_w, double theta);

}  // namespace gridcast
