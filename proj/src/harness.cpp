#include "gridcast/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "gridcast/csvio.hpp"
#include "gridcast/pipeline.hpp"
#include "gridcast/scenario.hpp"

namespace gridcast {

namespace {

PipelineParams params_from(const SimConfig& cfg) {
    PipelineParams p;
    p.degree = cfg.reconstruction_degree;
    p.bandwidth_hz = cfg.subchannel_bandwidth_hz;
    p.fragment_rate_bps = cfg.fragment_rate_bps();
    p.theta = cfg.transfer_efficiency;
    p.rate_aware_association = cfg.association_sweep;
    return p;
}

// Runs fn(0..count) across a small worker pool; results land by index, so
// the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

TrialRecord run_trial(const SimConfig& config, std::uint64_t seed) {
    const Scenario scenario = sample_scenario(config, seed);
    const ChannelState channel = realize_channel(scenario, seed);
    const PipelineParams params = params_from(config);

    const PipelineResult proposed = run_pipeline(channel, scenario.energy_rates_w, params);
    verify_pipeline_constraints(proposed, scenario.energy_rates_w, params,
                                config.num_subchannels);
    const PipelineResult baseline =
        run_baseline_all_enb(channel, scenario.energy_rates_w, params);
    verify_pipeline_constraints(baseline, scenario.energy_rates_w, params,
                                config.num_subchannels);

    TrialRecord rec;
    rec.seed = seed;
    rec.mode = config.placement_mode;
    rec.download_rate_bits = config.download_rate_bits;
    rec.theta = config.transfer_efficiency;
    rec.degree = config.reconstruction_degree;
    rec.proposed_ongrid_w = proposed.settlement.total_ongrid_w;
    rec.case1_ongrid_w = baseline.settlement.total_ongrid_w;
    rec.dstar = proposed.assoc.dstar;
    rec.case_label = proposed.assoc.case_label;
    rec.active_count = static_cast<int>(proposed.assoc.active_set.size());
    rec.counts = proposed.counts;
    rec.min_avg_snr = proposed.assoc.min_avg_snr;
    rec.delta_w = proposed.settlement.delta_w;
    return rec;
}

SweepSpec default_sweep() {
    SweepSpec spec;
    // R axis frozen from the one-time ceiling calibration (see README):
    // ten even steps up to 75 kbit per epoch, where the cell-edge baseline
    // averages about 25 W on-grid.
    spec.r_values.resize(10);
    for (int i = 0; i < 10; ++i) spec.r_values[i] = 7.5e3 * (i + 1);
    spec.theta_values = {0.0, 0.4, 0.8};
    spec.d_values = {1, 2, 3, 4};
    spec.snapshots = 100;
    return spec;
}

SweepResult run_sweep(const SimConfig& base, const SweepSpec& spec) {
    if (spec.snapshots < 1) throw std::invalid_argument("run_sweep: snapshots must be >= 1");

    SweepResult result;
    result.mode = base.placement_mode;
    result.spec = spec;

    struct Job {
        SimConfig cfg;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double theta : spec.theta_values) {
        for (int d : spec.d_values) {
            for (double r : spec.r_values) {
                SimConfig cfg = base;
                cfg.transfer_efficiency = theta;
                cfg.reconstruction_degree = d;
                cfg.download_rate_bits = r;
                cfg.validate();
                for (int s = 0; s < spec.snapshots; ++s) {
                    jobs.push_back({cfg, base.seed + static_cast<uint64_t>(s)});
                }
            }
        }
    }

    result.trials.resize(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), spec.threads, [&](int idx) {
        result.trials[idx] = run_trial(jobs[idx].cfg, jobs[idx].seed);
    });

    const int per_cell = spec.snapshots;
    for (std::size_t start = 0; start < result.trials.size(); start += per_cell) {
        SweepCell cell;
        cell.theta = result.trials[start].theta;
        cell.degree = result.trials[start].degree;
        cell.r_bits = result.trials[start].download_rate_bits;
        cell.snapshots = per_cell;

        double sum_p = 0.0, sum_c = 0.0;
        for (int s = 0; s < per_cell; ++s) {
            sum_p += result.trials[start + s].proposed_ongrid_w;
            sum_c += result.trials[start + s].case1_ongrid_w;
        }
        cell.mean_proposed_w = sum_p / per_cell;
        cell.mean_case1_w = sum_c / per_cell;
        if (per_cell > 1) {
            double var_p = 0.0, var_c = 0.0;
            for (int s = 0; s < per_cell; ++s) {
                const double dp = result.trials[start + s].proposed_ongrid_w - cell.mean_proposed_w;
                const double dc = result.trials[start + s].case1_ongrid_w - cell.mean_case1_w;
                var_p += dp * dp;
                var_c += dc * dc;
            }
            cell.se_proposed_w = std::sqrt(var_p / (per_cell - 1) / per_cell);
            cell.se_case1_w = std::sqrt(var_c / (per_cell - 1) / per_cell);
        }
        result.cells.push_back(cell);
    }
    return result;
}

void emit(const SweepResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw std::runtime_error("cannot create output directory: " + out_dir.string());

    {
        std::ostringstream csv;
        csv << "mode,theta,D,R_bits,mean_proposed_w,se_proposed_w,mean_case1_w,se_case1_w,"
               "snapshots\n";
        for (const auto& c : result.cells) {
            csv << to_string(result.mode) << ',' << fmt_num(c.theta) << ',' << c.degree << ','
                << fmt_num(c.r_bits) << ',' << fmt_num(c.mean_proposed_w) << ','
                << fmt_num(c.se_proposed_w) << ',' << fmt_num(c.mean_case1_w) << ','
                << fmt_num(c.se_case1_w) << ',' << c.snapshots << '\n';
        }
        write_text_file(out_dir / "sweep.csv", csv.str());
    }

    {
        std::ostringstream csv;
        csv << "mode,theta,D,R_bits,seed,proposed_ongrid_w,case1_ongrid_w,dstar,case_label,"
               "active_count,node_diag\n";
        for (const auto& t : result.trials) {
            csv << to_string(t.mode) << ',' << fmt_num(t.theta) << ',' << t.degree << ','
                << fmt_num(t.download_rate_bits) << ',' << t.seed << ','
                << fmt_num(t.proposed_ongrid_w) << ',' << fmt_num(t.case1_ongrid_w) << ','
                << t.dstar << ',' << to_string(t.case_label) << ',' << t.active_count << ',';
            // node_diag packs node:count:min_snr:delta per node, | separated.
            for (std::size_t i = 0; i < t.counts.size(); ++i) {
                if (i) csv << '|';
                csv << i << ':' << t.counts[i] << ':' << fmt_num(t.min_avg_snr[i]) << ':'
                    << fmt_num(t.delta_w[i]);
            }
            csv << '\n';
        }
        write_text_file(out_dir / "trials.csv", csv.str());
    }

    for (double theta : result.spec.theta_values) {
        std::ostringstream dat;
        dat << "# total on-grid power versus download size, " << to_string(result.mode)
            << ", theta=" << fmt_num(theta) << '\n';
        dat << "# columns: R_bits case1_mean case1_se";
        for (int d : result.spec.d_values) {
            dat << " proposed_D" << d << "_mean proposed_D" << d << "_se";
        }
        dat << '\n';
        for (double r : result.spec.r_values) {
            const SweepCell* first = nullptr;
            dat << fmt_num(r);
            for (int d : result.spec.d_values) {
                for (const auto& c : result.cells) {
                    if (c.theta == theta && c.degree == d && c.r_bits == r) {
                        if (!first) {
                            first = &c;
                            dat << ' ' << fmt_num(c.mean_case1_w) << ' ' << fmt_num(c.se_case1_w);
                        }
                        dat << ' ' << fmt_num(c.mean_proposed_w) << ' '
                            << fmt_num(c.se_proposed_w);
                        break;
                    }
                }
            }
            dat << '\n';
        }
        std::string name = "plot_" + std::string(to_string(result.mode)) + "_theta_" +
                           fmt_num(theta) + ".dat";
        write_text_file(out_dir / name, dat.str());
    }
}

CertificationReport run_certification(int instances, std::uint64_t base_seed, int degree) {
    CertificationReport report;
    report.rows.reserve(instances);

    for (int n = 0; n < instances; ++n) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(n);
        const TinyInstance t = random_tiny_instance(seed, degree);
        const OracleSolution oracle = solve_exact(t);

        PipelineParams params;
        params.degree = t.degree;
        params.bandwidth_hz = t.bandwidth_hz;
        params.fragment_rate_bps = t.fragment_rate_bps;
        params.theta = t.theta;
        params.rate_aware_association = true;

        double heuristic = std::numeric_limits<double>::infinity();
        try {
            const PipelineResult r = run_pipeline(t.channel, t.energy_rates_w, params);
            verify_pipeline_constraints(r, t.energy_rates_w, params, t.num_subchannels);
            heuristic = r.settlement.total_ongrid_w;
        } catch (const std::exception&) {
            report.all_feasible = false;
        }

        CertificationRow row;
        row.instance_seed = seed;
        row.oracle_w = oracle.best_total_ongrid_w;
        row.heuristic_w = heuristic;
        row.ratio = certification_ratio(heuristic, oracle.best_total_ongrid_w);
        if (heuristic < oracle.best_total_ongrid_w - 1e-9 * std::max(1.0, oracle.best_total_ongrid_w))
            report.oracle_never_beaten = false;
        report.rows.push_back(row);
    }

    std::vector<double> ratios;
    for (const auto& r : report.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    if (!ratios.empty()) {
        report.min_ratio = ratios.front();
        report.max_ratio = ratios.back();
        report.median_ratio = ratios[ratios.size() / 2];
    }
    return report;
}

void write_certification_csv(const CertificationReport& report,
                             const std::filesystem::path& path) {
    std::ostringstream csv;
    csv << "instance_seed,oracle_w,heuristic_w,ratio\n";
    for (const auto& r : report.rows) {
        csv << r.instance_seed << ',' << fmt_num(r.oracle_w) << ',' << fmt_num(r.heuristic_w)
            << ',' << fmt_num(r.ratio) << '\n';
    }
    write_text_file(path, csv.str());
}

}  // namespace gridcast
