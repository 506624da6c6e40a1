#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace gridcast {

enum class PlacementMode { CellEdge, CellCenter };

const char* to_string(PlacementMode m);
PlacementMode placement_mode_from_string(const std::string& s);

// Immutable description of one problem family.  All physical quantities are
// SI unless the field name says otherwise.  The per-fragment rate
// S = download_rate_bits / (epoch_s * reconstruction_degree) is always
// derived through fragment_rate_bps(), never stored.
struct SimConfig {
    double carrier_frequency_mhz = 2000.0;
    double subchannel_bandwidth_hz = 180e3;  // B
    int num_subchannels = 100;               // N
    int num_sns = 4;                         // M
    int num_users = 30;                      // K
    int reconstruction_degree = 2;           // D
    double cell_radius_m = 250.0;
    double sn_square_side_m = 60.0;
    double user_disk_radius_m = 80.0;
    double enb_energy_rate_w = 20.0;         // E_1
    double sn_energy_rate_w = 0.5;           // E_i, i >= 2
    double epoch_s = 1e-3;                   // T
    double download_rate_bits = 60e3;        // R (per user, per epoch)
    double transfer_efficiency = 0.4;        // theta
    double shadowing_std_db = 10.0;
    double noise_psd_dbm_hz = -174.0;        // N_0
    double noise_figure_ue_db = 9.0;
    double antenna_gain_enb_db = 16.0;
    double antenna_gain_sn_db = 5.0;
    // Extra building-entry loss per link kind.  Users sit indoors near the
    // serving nodes, so the macro signal pays an outdoor-to-indoor penalty
    // while SN links stay within the building.
    double enb_penetration_db = 14.0;
    double sn_penetration_db = 0.0;
    bool fast_fading_enabled = true;
    bool association_sweep = true;
    PlacementMode placement_mode = PlacementMode::CellEdge;
    std::uint64_t seed = 1;

    // S = R / (T * D), in bits per second.
    double fragment_rate_bps() const;

    // Throws std::invalid_argument naming the offending key.
    void validate() const;
};

// Parses a JSON document; keys are exactly the SimConfig field names, and any
// omitted key keeps its default.  Throws on parse failure, unknown keys or an
// invariant violation.
SimConfig load_config(const std::string& json_text);
SimConfig load_config_file(const std::filesystem::path& path);

// Applies "key=value" overrides (the CLI surface) on top of a config.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

}  // namespace gridcast
