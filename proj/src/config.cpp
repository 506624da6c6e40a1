#include "gridcast/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gridcast {

using nlohmann::json;

const char* to_string(PlacementMode m) {
    return m == PlacementMode::CellEdge ? "cell_edge" : "cell_center";
}

PlacementMode placement_mode_from_string(const std::string& s) {
    if (s == "cell_edge") return PlacementMode::CellEdge;
    if (s == "cell_center") return PlacementMode::CellCenter;
    throw std::invalid_argument("placement_mode must be cell_edge or cell_center, got \"" + s + "\"");
}

double SimConfig::fragment_rate_bps() const {
    return download_rate_bits / (epoch_s * reconstruction_degree);
}

void SimConfig::validate() const {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    };
    require(num_sns >= 1, "num_sns must be at least 1");
    require(num_users >= 1, "num_users must be at least 1");
    require(reconstruction_degree >= 1, "reconstruction_degree must be at least 1");
    if (reconstruction_degree > num_sns)
        throw std::invalid_argument("reconstruction_degree exceeds num_sns");
    if (num_subchannels < num_sns + 1)
        throw std::invalid_argument("num_subchannels must be at least num_sns + 1");
    require(transfer_efficiency >= 0.0 && transfer_efficiency <= 1.0,
            "transfer_efficiency must lie in [0, 1]");
    require(carrier_frequency_mhz > 0.0, "carrier_frequency_mhz must be positive");
    require(subchannel_bandwidth_hz > 0.0, "subchannel_bandwidth_hz must be positive");
    require(cell_radius_m > 0.0, "cell_radius_m must be positive");
    require(sn_square_side_m > 0.0, "sn_square_side_m must be positive");
    require(user_disk_radius_m > 0.0, "user_disk_radius_m must be positive");
    require(enb_energy_rate_w >= 0.0, "enb_energy_rate_w must be nonnegative");
    require(sn_energy_rate_w >= 0.0, "sn_energy_rate_w must be nonnegative");
    require(epoch_s > 0.0, "epoch_s must be positive");
    require(download_rate_bits >= 0.0, "download_rate_bits must be nonnegative");
    require(shadowing_std_db >= 0.0, "shadowing_std_db must be nonnegative");
    require(enb_penetration_db >= 0.0, "enb_penetration_db must be nonnegative");
    require(sn_penetration_db >= 0.0, "sn_penetration_db must be nonnegative");
    if (user_disk_radius_m > cell_radius_m)
        throw std::invalid_argument("user_disk_radius_m exceeds cell_radius_m");
    if (placement_mode == PlacementMode::CellEdge &&
        0.6 * cell_radius_m > cell_radius_m - user_disk_radius_m)
        throw std::invalid_argument(
            "cell_edge placement infeasible: user_disk_radius_m must be at most "
            "0.4 * cell_radius_m");
}

namespace {

template <typename T>
void read_number(const json& j, const char* key, T& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number())
        throw std::invalid_argument(std::string(key) + " must be a number");
    out = it->get<T>();
}

void read_bool(const json& j, const char* key, bool& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_boolean())
        throw std::invalid_argument(std::string(key) + " must be a boolean");
    out = it->get<bool>();
}

const char* const kKnownKeys[] = {
    "carrier_frequency_mhz", "subchannel_bandwidth_hz", "num_subchannels",
    "num_sns", "num_users", "reconstruction_degree", "cell_radius_m",
    "sn_square_side_m", "user_disk_radius_m", "enb_energy_rate_w",
    "sn_energy_rate_w", "epoch_s", "download_rate_bits", "transfer_efficiency",
    "shadowing_std_db", "noise_psd_dbm_hz", "noise_figure_ue_db",
    "antenna_gain_enb_db", "antenna_gain_sn_db", "enb_penetration_db", "sn_penetration_db",
    "fast_fading_enabled", "association_sweep", "placement_mode", "seed",
};

bool is_integer_key(const std::string& key) {
    return key == "num_subchannels" || key == "num_sns" || key == "num_users" ||
           key == "reconstruction_degree" || key == "seed";
}

json to_json(const SimConfig& c) {
    json j;
    j["carrier_frequency_mhz"] = c.carrier_frequency_mhz;
    j["subchannel_bandwidth_hz"] = c.subchannel_bandwidth_hz;
    j["num_subchannels"] = c.num_subchannels;
    j["num_sns"] = c.num_sns;
    j["num_users"] = c.num_users;
    j["reconstruction_degree"] = c.reconstruction_degree;
    j["cell_radius_m"] = c.cell_radius_m;
    j["sn_square_side_m"] = c.sn_square_side_m;
    j["user_disk_radius_m"] = c.user_disk_radius_m;
    j["enb_energy_rate_w"] = c.enb_energy_rate_w;
    j["sn_energy_rate_w"] = c.sn_energy_rate_w;
    j["epoch_s"] = c.epoch_s;
    j["download_rate_bits"] = c.download_rate_bits;
    j["transfer_efficiency"] = c.transfer_efficiency;
    j["shadowing_std_db"] = c.shadowing_std_db;
    j["noise_psd_dbm_hz"] = c.noise_psd_dbm_hz;
    j["noise_figure_ue_db"] = c.noise_figure_ue_db;
    j["antenna_gain_enb_db"] = c.antenna_gain_enb_db;
    j["antenna_gain_sn_db"] = c.antenna_gain_sn_db;
    j["enb_penetration_db"] = c.enb_penetration_db;
    j["sn_penetration_db"] = c.sn_penetration_db;
    j["fast_fading_enabled"] = c.fast_fading_enabled;
    j["association_sweep"] = c.association_sweep;
    j["placement_mode"] = to_string(c.placement_mode);
    j["seed"] = c.seed;
    return j;
}

}  // namespace

SimConfig load_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("configuration parse failure: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("configuration document must be a JSON object");

    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : kKnownKeys) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("unknown configuration key \"" + item.key() + "\"");
    }

    SimConfig cfg;
    read_number(j, "carrier_frequency_mhz", cfg.carrier_frequency_mhz);
    read_number(j, "subchannel_bandwidth_hz", cfg.subchannel_bandwidth_hz);
    read_number(j, "num_subchannels", cfg.num_subchannels);
    read_number(j, "num_sns", cfg.num_sns);
    read_number(j, "num_users", cfg.num_users);
    read_number(j, "reconstruction_degree", cfg.reconstruction_degree);
    read_number(j, "cell_radius_m", cfg.cell_radius_m);
    read_number(j, "sn_square_side_m", cfg.sn_square_side_m);
    read_number(j, "user_disk_radius_m", cfg.user_disk_radius_m);
    read_number(j, "enb_energy_rate_w", cfg.enb_energy_rate_w);
    read_number(j, "sn_energy_rate_w", cfg.sn_energy_rate_w);
    read_number(j, "epoch_s", cfg.epoch_s);
    read_number(j, "download_rate_bits", cfg.download_rate_bits);
    read_number(j, "transfer_efficiency", cfg.transfer_efficiency);
    read_number(j, "shadowing_std_db", cfg.shadowing_std_db);
    read_number(j, "noise_psd_dbm_hz", cfg.noise_psd_dbm_hz);
    read_number(j, "noise_figure_ue_db", cfg.noise_figure_ue_db);
    read_number(j, "antenna_gain_enb_db", cfg.antenna_gain_enb_db);
    read_number(j, "antenna_gain_sn_db", cfg.antenna_gain_sn_db);
    read_number(j, "enb_penetration_db", cfg.enb_penetration_db);
    read_number(j, "sn_penetration_db", cfg.sn_penetration_db);
    read_bool(j, "fast_fading_enabled", cfg.fast_fading_enabled);
    read_bool(j, "association_sweep", cfg.association_sweep);
    if (auto it = j.find("placement_mode"); it != j.end()) {
        if (!it->is_string()) throw std::invalid_argument("placement_mode must be a string");
        cfg.placement_mode = placement_mode_from_string(it->get<std::string>());
    }
    read_number(j, "seed", cfg.seed);

    cfg.validate();
    return cfg;
}

SimConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open configuration file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
    // Route through the JSON loader so both surfaces share type checks and
    // invariant validation.
    json dump = to_json(cfg);
    if (dump.find(key) == dump.end())
        throw std::invalid_argument("unknown configuration key \"" + key + "\"");

    if (key == "placement_mode") {
        dump[key] = value;
    } else if (key == "fast_fading_enabled" || key == "association_sweep") {
        if (value == "true" || value == "1")
            dump[key] = true;
        else if (value == "false" || value == "0")
            dump[key] = false;
        else
            throw std::invalid_argument(key + " must be true or false");
    } else if (is_integer_key(key)) {
        std::size_t pos = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(value, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != value.size() || value.empty())
            throw std::invalid_argument(key + ": cannot parse integer value \"" + value + "\"");
        dump[key] = v;
    } else {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != value.size() || value.empty())
            throw std::invalid_argument(key + ": cannot parse numeric value \"" + value + "\"");
        dump[key] = v;
    }

    cfg = load_config(dump.dump());
}

}  // namespace gridcast
