#include <string>

#include "doctest.h"
#include "gridcast/config.hpp"

using namespace gridcast;

TEST_CASE("empty document yields the default deployment") {
    const SimConfig cfg = load_config("{}");
    CHECK(cfg.subchannel_bandwidth_hz == 180e3);
    CHECK(cfg.num_sns == 4);
    CHECK(cfg.num_subchannels == 100);
    CHECK(cfg.num_users == 30);
    CHECK(cfg.enb_energy_rate_w == 20.0);
    CHECK(cfg.sn_energy_rate_w == 0.5);
    CHECK(cfg.epoch_s == 1e-3);
    CHECK(cfg.cell_radius_m == 250.0);
    CHECK(cfg.carrier_frequency_mhz == 2000.0);
    CHECK(cfg.noise_psd_dbm_hz == -174.0);
    CHECK(cfg.noise_figure_ue_db == 9.0);
    CHECK(cfg.antenna_gain_enb_db == 16.0);
    CHECK(cfg.antenna_gain_sn_db == 5.0);
    CHECK(cfg.shadowing_std_db == 10.0);
    CHECK(cfg.placement_mode == PlacementMode::CellEdge);
    CHECK(cfg.fast_fading_enabled);
}

TEST_CASE("degree above the SN count is rejected by name") {
    CHECK_THROWS_WITH_AS(load_config(R"({"reconstruction_degree":5,"num_sns":4})"),
                         "reconstruction_degree exceeds num_sns", std::invalid_argument);
}

TEST_CASE("overrides apply and the rest stays default") {
    const SimConfig cfg =
        load_config(R"({"num_subchannels":4,"num_sns":2,"num_users":3})");
    CHECK(cfg.num_subchannels == 4);
    CHECK(cfg.num_sns == 2);
    CHECK(cfg.num_users == 3);
    CHECK(cfg.subchannel_bandwidth_hz == 180e3);
    CHECK(cfg.enb_energy_rate_w == 20.0);
}

TEST_CASE("parse failures and unknown keys are reported") {
    CHECK_THROWS_AS(load_config("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(load_config(R"({"num_snss":4})"), std::invalid_argument);
    CHECK_THROWS_AS(load_config(R"({"num_sns":"four"})"), std::invalid_argument);
}

TEST_CASE("fragment rate is derived, never stored") {
    SimConfig cfg = load_config(R"({"download_rate_bits":90000,"reconstruction_degree":3})");
    CHECK(cfg.fragment_rate_bps() == 90000.0 / (1e-3 * 3));
    cfg.reconstruction_degree = 2;
    CHECK(cfg.fragment_rate_bps() == 90000.0 / (1e-3 * 2));
}

TEST_CASE("geometry must keep the user disk inside the cell") {
    CHECK_THROWS_AS(load_config(R"({"user_disk_radius_m":300})"), std::invalid_argument);
    // cell_edge needs 0.6*radius + disk <= radius
    CHECK_THROWS_AS(load_config(R"({"user_disk_radius_m":120})"), std::invalid_argument);
    CHECK_NOTHROW(load_config(R"({"user_disk_radius_m":120,"placement_mode":"cell_center"})"));
}

TEST_CASE("command-line style overrides reuse the JSON path") {
    SimConfig cfg = load_config("{}");
    apply_override(cfg, "num_users", "7");
    apply_override(cfg, "placement_mode", "cell_center");
    apply_override(cfg, "transfer_efficiency", "0.8");
    apply_override(cfg, "fast_fading_enabled", "false");
    CHECK(cfg.num_users == 7);
    CHECK(cfg.placement_mode == PlacementMode::CellCenter);
    CHECK(cfg.transfer_efficiency == 0.8);
    CHECK_FALSE(cfg.fast_fading_enabled);
    CHECK_THROWS_AS(apply_override(cfg, "num_users", "many"), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(cfg, "nonsense", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(cfg, "transfer_efficiency", "1.5"), std::invalid_argument);
}
