#include "gridcast/scenario.hpp"

#include <cmath>

#include "gridcast/rng.hpp"

namespace gridcast {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Point at arc length s along the square perimeter, walking counterclockwise
// from the lower-left corner.
Vec2 square_perimeter_point(const Vec2& center, double side, double s) {
    const double h = side / 2.0;
    const double seg = std::fmod(s, 4.0 * side);
    if (seg < side) return {center.x - h + seg, center.y - h};
    if (seg < 2.0 * side) return {center.x + h, center.y - h + (seg - side)};
    if (seg < 3.0 * side) return {center.x + h - (seg - 2.0 * side), center.y + h};
    return {center.x - h, center.y + h - (seg - 3.0 * side)};
}

// Area-uniform draw from the annulus r in [r_min, r_max).
Vec2 sample_annulus(Xoshiro256pp& rng, double r_min, double r_max) {
    const double u = rng.next_double();
    const double r = std::sqrt(r_min * r_min + u * (r_max * r_max - r_min * r_min));
    const double phi = kTwoPi * rng.next_double();
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Scenario sample_scenario(const SimConfig& config, std::uint64_t seed) {
    config.validate();

    Scenario sc;
    sc.config = config;

    // The feasible region for the virtual SN center keeps the whole user
    // disk inside the cell; area-uniform sampling over it needs no rejection.
    const double edge_threshold = 0.6 * config.cell_radius_m;
    const double in_cell_max = config.cell_radius_m - config.user_disk_radius_m;
    auto center_rng = Xoshiro256pp::substream(seed, kStreamVirtualCenter);
    if (config.placement_mode == PlacementMode::CellEdge) {
        sc.virtual_center = sample_annulus(center_rng, edge_threshold, in_cell_max);
    } else {
        sc.virtual_center = sample_annulus(center_rng, 0.0, std::min(edge_threshold, in_cell_max));
    }

    const int num_nodes = config.num_sns + 1;
    sc.node_positions.resize(num_nodes);
    sc.node_positions[0] = {0.0, 0.0};  // eNB at the cell center
    const double spacing = 4.0 * config.sn_square_side_m / config.num_sns;
    for (int m = 0; m < config.num_sns; ++m) {
        sc.node_positions[1 + m] =
            square_perimeter_point(sc.virtual_center, config.sn_square_side_m, m * spacing);
    }

    auto user_rng = Xoshiro256pp::substream(seed, kStreamUserPositions);
    sc.user_positions.resize(config.num_users);
    for (auto& p : sc.user_positions) {
        const Vec2 d = sample_annulus(user_rng, 0.0, config.user_disk_radius_m);
        p = {sc.virtual_center.x + d.x, sc.virtual_center.y + d.y};
    }

    sc.energy_rates_w.assign(num_nodes, config.sn_energy_rate_w);
    sc.energy_rates_w[0] = config.enb_energy_rate_w;
    return sc;
}

}  // namespace gridcast
