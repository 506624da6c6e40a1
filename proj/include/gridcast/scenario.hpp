#pragma once

#include <cstdint>
#include <vector>

#include "gridcast/config.hpp"

namespace gridcast {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// One sampled deployment.  Node 0 is the eNB at the origin; nodes 1..M are
// serving nodes on the perimeter of a square of side sn_square_side_m
// centered on virtual_center.  Users lie inside the disk of
// user_disk_radius_m around virtual_center.  Immutable after construction
// and safe to share across trial workers.
struct Scenario {
    std::vector<Vec2> node_positions;   // size M+1
    std::vector<Vec2> user_positions;   // size K
    std::vector<double> energy_rates_w; // size M+1
    SimConfig config;
    Vec2 virtual_center;

    int num_nodes() const { return static_cast<int>(node_positions.size()); }
};

// Deterministic for fixed (config, seed): the center draws from stream 0 and
// the users from stream 1 of the seed, in user-index order.
Scenario sample_scenario(const SimConfig& config, std::uint64_t seed);

}  // namespace gridcast
