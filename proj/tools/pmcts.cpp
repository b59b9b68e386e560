#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pmcts/bandit.hpp"
#include "pmcts/mission.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOutputs {
    fs::path mission_csv;
    fs::path samples_csv;
    fs::path prediction_csv;
};

RunOutputs output_paths(const fs::path& dir) {
    fs::create_directories(dir);
    return {dir / "mission.csv", dir / "samples.csv", dir / "prediction_final.csv"};
}

int run_one_mission(pmcts::MissionConfig config, const fs::path& out_dir, bool quiet) {
    const RunOutputs out = output_paths(out_dir);

    // Stream records so a crash still leaves a valid log prefix.
    std::ofstream csv(out.mission_csv);
    if (!csv) {
        std::cerr << "error: cannot open " << out.mission_csv << "\n";
        return 1;
    }
    csv << "#pareto-mcts-log v1\n" << pmcts::mission_csv_header() << '\n';
    const pmcts::RecordSink sink = [&csv, quiet](const pmcts::MissionRecord& r) {
        csv << pmcts::mission_csv_row(r) << '\n';
        csv.flush();
        if (!quiet) {
            std::cerr << "replan: samples=" << r.samples << " rmse=" << r.metrics.rmse
                      << " hotspot_pct=" << r.metrics.hotspot_sample_pct
                      << " wall_ms=" << r.wall_ms << "\n";
        }
    };

    const pmcts::MissionLog log = pmcts::run_mission(config, sink);
    csv.close();
    pmcts::write_samples_csv(log, out.samples_csv);
    pmcts::save_grid(log.final_prediction, out.prediction_csv);

    if (log.aborted) {
        std::cerr << "mission aborted after " << log.total_samples
                  << " samples (no feasible actions)\n";
        return 2;
    }
    if (!quiet) {
        std::cerr << "done: " << log.total_samples << " samples, " << log.records.size()
                  << " replans -> " << out_dir << "\n";
    }
    return 0;
}

bool parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoull(text);
            return true;
        }
        lo = std::stoull(text.substr(0, dots));
        hi = std::stoull(text.substr(dots + 2));
        return lo <= hi;
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective informative planning toolkit"};
    app.require_subcommand(1);

    // run
    std::string run_config;
    std::string run_out = "out";
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    bool quiet = false;
    CLI::App* run = app.add_subcommand("run", "Run one mission");
    run->add_option("--config", run_config, "Mission config file")->required();
    run->add_option("--seed", run_seed, "Override the config seed")
        ->each([&run_seed_set](const std::string&) { run_seed_set = true; });
    run->add_option("--out", run_out, "Output directory");
    run->add_flag("--quiet", quiet, "Suppress progress output");

    // sweep
    std::string sweep_config;
    std::string sweep_out = "sweep";
    std::string sweep_seeds;
    unsigned sweep_jobs = std::thread::hardware_concurrency();
    CLI::App* sweep = app.add_subcommand("sweep", "Run a mission per seed in a range");
    sweep->add_option("--config", sweep_config, "Mission config file")->required();
    sweep->add_option("--seeds", sweep_seeds, "Seed range a..b (inclusive)")->required();
    sweep->add_option("--out", sweep_out, "Output directory (one subdirectory per seed)");
    sweep->add_option("--jobs", sweep_jobs, "Parallel workers");

    // bandit
    std::string bandit_arms;
    std::string bandit_out = "bandit_trace.csv";
    std::uint64_t bandit_horizon = 100000;
    std::size_t bandit_trials = 10;
    std::uint64_t bandit_seed = 1;
    CLI::App* bandit = app.add_subcommand("bandit", "Run the selection-policy testbed");
    bandit->add_option("--arms", bandit_arms, "Arm means file (CSV, one arm per line)")
        ->required();
    bandit->add_option("--horizon", bandit_horizon, "Steps per trial");
    bandit->add_option("--trials", bandit_trials, "Trial count");
    bandit->add_option("--seed", bandit_seed, "Experiment seed");
    bandit->add_option("--out", bandit_out, "Trace CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            pmcts::MissionConfig config = pmcts::load_config(run_config);
            if (run_seed_set) config.seed = run_seed;
            return run_one_mission(config, run_out, quiet);
        }

        if (sweep->parsed()) {
            std::uint64_t lo = 0, hi = 0;
            if (!parse_seed_range(sweep_seeds, lo, hi)) {
                std::cerr << "error: bad seed range '" << sweep_seeds << "' (want a..b)\n";
                return 1;
            }
            const pmcts::MissionConfig base = pmcts::load_config(sweep_config);

            std::vector<std::uint64_t> seeds;
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
            std::atomic<std::size_t> next{0};
            std::atomic<int> failures{0};
            const unsigned workers =
                std::max(1u, std::min<unsigned>(sweep_jobs, seeds.size()));
            std::mutex io_mutex;

            auto worker = [&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= seeds.size()) return;
                    pmcts::MissionConfig config = base;
                    config.seed = seeds[i];
                    const fs::path dir =
                        fs::path(sweep_out) / ("seed_" + std::to_string(seeds[i]));
                    const int rc = run_one_mission(config, dir, true);
                    std::lock_guard<std::mutex> lock(io_mutex);
                    if (rc == 0) {
                        std::cerr << "seed " << seeds[i] << ": ok\n";
                    } else {
                        std::cerr << "seed " << seeds[i] << ": failed (rc=" << rc << ")\n";
                        failures.fetch_add(1);
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
            return failures.load() == 0 ? 0 : 2;
        }

        if (bandit->parsed()) {
            const std::vector<pmcts::BanditArm> arms = pmcts::load_arms(bandit_arms);
            const pmcts::BanditExperiment experiment =
                pmcts::run_experiment(arms, bandit_horizon, bandit_trials, bandit_seed);
            pmcts::write_trace_csv(experiment, bandit_out);

            std::cerr << "arms=" << arms.size() << " trials=" << experiment.trials.size()
                      << " horizon=" << bandit_horizon << "\n";
            for (std::size_t c = 0; c < experiment.checkpoints.size(); ++c) {
                std::cerr << "T_k(" << experiment.checkpoints[c] << ") means:";
                for (std::size_t k = 0; k < arms.size(); ++k) {
                    double sum = 0.0;
                    for (const auto& trial : experiment.trials)
                        sum += static_cast<double>(trial.checkpoint_counts[c][k]);
                    std::cerr << ' ' << sum / static_cast<double>(experiment.trials.size());
                }
                std::cerr << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
