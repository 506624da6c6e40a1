#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridcast/channel.hpp"
#include "gridcast/config.hpp"
#include "gridcast/csvio.hpp"
#include "gridcast/harness.hpp"
#include "gridcast/kernels.hpp"
#include "gridcast/pipeline.hpp"
#include "gridcast/scenario.hpp"

namespace {

using namespace gridcast;

const char* const kConfigKeys[] = {
    "carrier_frequency_mhz", "subchannel_bandwidth_hz", "num_subchannels",
    "num_sns", "num_users", "reconstruction_degree", "cell_radius_m",
    "sn_square_side_m", "user_disk_radius_m", "enb_energy_rate_w",
    "sn_energy_rate_w", "epoch_s", "download_rate_bits", "transfer_efficiency",
    "shadowing_std_db", "noise_psd_dbm_hz", "noise_figure_ue_db",
    "antenna_gain_enb_db", "antenna_gain_sn_db", "enb_penetration_db", "sn_penetration_db",
    "fast_fading_enabled", "association_sweep", "placement_mode",
};

struct ConfigArgs {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file");
        for (const char* key : kConfigKeys) {
            cmd->add_option_function<std::string>(
                std::string("--") + key,
                [this, key](const std::string& v) { overrides.emplace_back(key, v); },
                std::string("override configuration key ") + key);
        }
    }

    SimConfig resolve() const {
        SimConfig cfg = config_path.empty() ? load_config("{}") : load_config_file(config_path);
        for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
        return cfg;
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

void write_beta_csv(const PipelineResult& r, const std::filesystem::path& path) {
    std::ostringstream csv;
    csv << "k,i,beta\n";
    for (int k = 0; k < r.assoc.num_users; ++k) {
        for (int i = 0; i < r.assoc.num_nodes; ++i) {
            csv << k << ',' << i << ',' << (r.assoc.beta_at(i, k) ? 1 : 0) << '\n';
        }
    }
    write_text_file(path, csv.str());
}

void write_alpha_csv(const PipelineResult& r, const std::filesystem::path& path) {
    std::ostringstream csv;
    csv << "i,j\n";
    for (std::size_t i = 0; i < r.plan.assigned_sets.size(); ++i) {
        for (int j : r.plan.assigned_sets[i]) csv << i << ',' << j << '\n';
    }
    write_text_file(path, csv.str());
}

void write_settlement_csv(const PipelineResult& r, const std::filesystem::path& path) {
    std::ostringstream csv;
    csv << "node,power_w,delta_w,ongrid_w\n";
    for (std::size_t i = 0; i < r.settlement.node_power_w.size(); ++i) {
        csv << i << ',' << fmt_num(r.settlement.node_power_w[i]) << ','
            << fmt_num(r.settlement.delta_w[i]) << ',' << fmt_num(r.settlement.ongrid_w[i])
            << '\n';
    }
    write_text_file(path, csv.str());
}

int cmd_trial(const ConfigArgs& cargs, std::uint64_t seed, bool seed_given,
              const std::string& out_dir) {
    SimConfig cfg = cargs.resolve();
    if (seed_given) cfg.seed = seed;

    const TrialRecord rec = run_trial(cfg, cfg.seed);
    std::cout << "mode=" << to_string(rec.mode) << " R_bits=" << fmt_num(rec.download_rate_bits)
              << " theta=" << fmt_num(rec.theta) << " D=" << rec.degree << " seed=" << rec.seed
              << "\n";
    std::cout << "proposed_ongrid_w=" << fmt_num(rec.proposed_ongrid_w)
              << " case1_ongrid_w=" << fmt_num(rec.case1_ongrid_w) << " dstar=" << rec.dstar
              << " case=" << to_string(rec.case_label) << " active=" << rec.active_count << "\n";
    for (std::size_t i = 0; i < rec.counts.size(); ++i) {
        std::cout << "  node " << i << ": N_i=" << rec.counts[i]
                  << " min_avg_snr=" << fmt_num(rec.min_avg_snr[i])
                  << " delta_w=" << fmt_num(rec.delta_w[i]) << "\n";
    }

    if (!out_dir.empty()) {
        const Scenario sc = sample_scenario(cfg, cfg.seed);
        const ChannelState ch = realize_channel(sc, cfg.seed);
        PipelineParams params;
        params.degree = cfg.reconstruction_degree;
        params.bandwidth_hz = cfg.subchannel_bandwidth_hz;
        params.fragment_rate_bps = cfg.fragment_rate_bps();
        params.theta = cfg.transfer_efficiency;
        params.rate_aware_association = cfg.association_sweep;
        const PipelineResult r = run_pipeline(ch, sc.energy_rates_w, params);

        std::filesystem::create_directories(out_dir);
        SweepResult one;
        one.mode = cfg.placement_mode;
        one.spec.r_values = {cfg.download_rate_bits};
        one.spec.theta_values = {cfg.transfer_efficiency};
        one.spec.d_values = {cfg.reconstruction_degree};
        one.spec.snapshots = 1;
        one.trials = {rec};
        write_beta_csv(r, std::filesystem::path(out_dir) / "beta.csv");
        write_alpha_csv(r, std::filesystem::path(out_dir) / "alpha.csv");
        write_settlement_csv(r, std::filesystem::path(out_dir) / "settlement.csv");
        std::ostringstream csv;
        csv << "mode,theta,D,R_bits,seed,proposed_ongrid_w,case1_ongrid_w,dstar,case_label,"
               "active_count\n"
            << to_string(rec.mode) << ',' << fmt_num(rec.theta) << ',' << rec.degree << ','
            << fmt_num(rec.download_rate_bits) << ',' << rec.seed << ','
            << fmt_num(rec.proposed_ongrid_w) << ',' << fmt_num(rec.case1_ongrid_w) << ','
            << rec.dstar << ',' << to_string(rec.case_label) << ',' << rec.active_count << '\n';
        write_text_file(std::filesystem::path(out_dir) / "trial.csv", csv.str());
    }
    return 0;
}

int cmd_sweep(const ConfigArgs& cargs, std::uint64_t seed, bool seed_given,
              const std::string& r_list, const std::string& theta_list,
              const std::string& d_list, int snapshots, int threads,
              const std::string& out_dir) {
    SimConfig cfg = cargs.resolve();
    if (seed_given) cfg.seed = seed;

    SweepSpec spec = default_sweep();
    if (!r_list.empty()) spec.r_values = parse_double_list(r_list);
    if (!theta_list.empty()) spec.theta_values = parse_double_list(theta_list);
    if (!d_list.empty()) spec.d_values = parse_int_list(d_list);
    if (snapshots > 0) spec.snapshots = snapshots;
    spec.threads = threads;

    const SweepResult result = run_sweep(cfg, spec);
    emit(result, out_dir);
    std::cout << "wrote " << result.cells.size() << " cells / " << result.trials.size()
              << " trials to " << out_dir << "\n";
    return 0;
}

int cmd_certify(int instances, std::uint64_t seed, int degree, const std::string& out_file) {
    const CertificationReport report = run_certification(instances, seed, degree);
    write_certification_csv(report, out_file);
    std::cout << "instances=" << report.rows.size() << " ratio min=" << fmt_num(report.min_ratio)
              << " median=" << fmt_num(report.median_ratio)
              << " max=" << fmt_num(report.max_ratio) << "\n";
    std::cout << "all_feasible=" << (report.all_feasible ? "yes" : "no")
              << " oracle_never_beaten=" << (report.oracle_never_beaten ? "yes" : "no") << "\n";
    if (!report.all_feasible || !report.oracle_never_beaten) {
        std::cerr << "certification violation detected\n";
        return 2;
    }
    return 0;
}

int cmd_dump_channel(const ConfigArgs& cargs, std::uint64_t seed, bool seed_given,
                     const std::string& out_file) {
    SimConfig cfg = cargs.resolve();
    if (seed_given) cfg.seed = seed;

    const Scenario sc = sample_scenario(cfg, cfg.seed);
    const ChannelState ch = realize_channel(sc, cfg.seed);
    std::ostringstream csv;
    csv << "i,j,k,snr\n";
    for (int i = 0; i < ch.num_nodes; ++i) {
        for (int j = 0; j < ch.num_subchannels; ++j) {
            for (int k = 0; k < ch.num_users; ++k) {
                csv << i << ',' << j << ',' << k << ',' << fmt_num(ch.snr_row(i, k)[j]) << '\n';
            }
        }
    }
    write_text_file(out_file, csv.str());
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridcast: on-grid power minimization for cache-assisted multicast downlinks"};
    app.require_subcommand(1);

    ConfigArgs trial_cfg, sweep_cfg, dump_cfg;
    std::uint64_t seed = 0;
    int snapshots = 0, threads = 0, instances = 200, degree = 1;
    std::string out_dir, out_file = "certification.csv", channel_file = "channel.csv";
    std::string r_list, theta_list, d_list;

    auto* trial = app.add_subcommand("trial", "run one snapshot and report both designs");
    trial_cfg.attach(trial);
    auto* trial_seed = trial->add_option("--seed", seed, "snapshot seed");
    trial->add_option("--out", out_dir, "directory for trial.csv, beta.csv, alpha.csv, settlement.csv");

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over R, theta, D");
    sweep_cfg.attach(sweep);
    auto* sweep_seed = sweep->add_option("--seed", seed, "base seed (snapshot s uses seed+s)");
    sweep->add_option("--r-values", r_list, "comma-separated download sizes in bits");
    sweep->add_option("--theta-values", theta_list, "comma-separated transfer efficiencies");
    sweep->add_option("--d-values", d_list, "comma-separated reconstruction degrees");
    sweep->add_option("--snapshots", snapshots, "snapshots per grid cell");
    sweep->add_option("--threads", threads, "worker threads (0 = auto)");
    sweep->add_option("--out", out_dir, "output directory")->required();

    auto* certify = app.add_subcommand("certify", "compare the pipeline against the exact oracle");
    certify->add_option("--instances", instances, "number of random tiny instances");
    auto* certify_seed = certify->add_option("--seed", seed, "base instance seed");
    certify->add_option("--degree", degree, "reconstruction degree of the instances");
    certify->add_option("--out", out_file, "certification CSV path");

    auto* dump = app.add_subcommand("dump-channel", "write the realized SNR array as CSV");
    dump_cfg.attach(dump);
    auto* dump_seed = dump->add_option("--seed", seed, "realization seed");
    dump->add_option("--out", channel_file, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (trial->parsed())
            return cmd_trial(trial_cfg, seed, !trial_seed->empty(), out_dir);
        if (sweep->parsed())
            return cmd_sweep(sweep_cfg, seed, !sweep_seed->empty(), r_list, theta_list, d_list,
                             snapshots, threads, out_dir);
        if (certify->parsed())
            return cmd_certify(instances, certify_seed->empty() ? 1 : seed, degree, out_file);
        if (dump->parsed())
            return cmd_dump_channel(dump_cfg, seed, !dump_seed->empty(), channel_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
