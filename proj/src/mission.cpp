#include "pmcts/mission.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pmcts {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

FieldGrid build_environment(const MissionConfig& config) {
    FieldGrid truth;
    if (config.env.rfind("synth:", 0) == 0) {
        const std::uint64_t env_seed = std::stoull(config.env.substr(6));
        truth = synth_environment(env_seed, config.extent, config.synth_sources, {},
                                  config.synth_grid, config.synth_grid);
    } else if (config.env.rfind("file:", 0) == 0) {
        truth = load_grid(config.env.substr(5));
    } else {
        throw std::invalid_argument("build_environment: bad selector '" + config.env +
                                    "' (want synth:<seed> or file:<path>)");
    }
    if (config.env_downsample > 1) truth = downsample(truth, config.env_downsample);
    return truth;
}

MetricRecord metrics(const FieldGrid& prediction, const FieldGrid& truth,
                     std::span<const Point2> samples) {
    if (prediction.width() != truth.width() || prediction.height() != truth.height())
        throw std::invalid_argument("metrics: grid shapes differ");

    MetricRecord m;
    double se = 0.0, ae = 0.0, hse = 0.0, hae = 0.0;
    std::size_t hot_cells = 0;
    const std::size_t cells = truth.cells().size();
    for (int iy = 0; iy < truth.height(); ++iy) {
        for (int ix = 0; ix < truth.width(); ++ix) {
            const double err = prediction.cell(ix, iy) - truth.cell(ix, iy);
            se += err * err;
            ae += std::abs(err);
            if (truth.is_hotspot(ix, iy)) {
                hse += err * err;
                hae += std::abs(err);
                ++hot_cells;
            }
        }
    }
    m.rmse = std::sqrt(se / static_cast<double>(cells));
    m.mae = ae / static_cast<double>(cells);
    if (hot_cells > 0) {
        m.hotspot_rmse = std::sqrt(hse / static_cast<double>(hot_cells));
        m.hotspot_mae = hae / static_cast<double>(hot_cells);
    }

    if (!samples.empty()) {
        std::size_t in_hotspot = 0;
        for (const Point2& s : samples) {
            if (truth.is_hotspot_at(s)) ++in_hotspot;
        }
        m.hotspot_sample_pct =
            100.0 * static_cast<double>(in_hotspot) / static_cast<double>(samples.size());
    }
    return m;
}

FieldGrid predict_grid(const GaussianProcess& gp, const FieldGrid& grid_template, double offset,
                       double scale) {
    const int w = grid_template.width();
    const int h = grid_template.height();

    std::vector<Point2> centers;
    centers.reserve(static_cast<std::size_t>(w) * h);
    for (int iy = 0; iy < h; ++iy) {
        for (int ix = 0; ix < w; ++ix) centers.push_back(grid_template.cell_center(ix, iy));
    }
    std::vector<double> cells = gp.predict_mean_batch(centers);
    for (double& c : cells) c = c * scale + offset;
    return FieldGrid::from_cells(w, h, grid_template.extent(), std::move(cells));
}

MissionLog run_mission(const MissionConfig& config, const RecordSink& sink) {
    if (config.mission_samples == 0)
        throw std::invalid_argument("run_mission: mission_samples must be positive");
    if (config.reward.objectives.empty())
        throw std::invalid_argument("run_mission: no objectives configured");
    if (config.schedule && config.schedule->objective >= config.reward.dims())
        throw std::invalid_argument("run_mission: schedule objective out of range");

    const FieldGrid truth = build_environment(config);
    const Extent& workspace = truth.extent();

    // The model works in standardized units of the true field.
    const double mu = truth.mean_value();
    double sigma = truth.stddev_value();
    if (sigma <= 0.0) sigma = 1.0;
    const double noise_std =
        config.obs_noise_std.value_or(0.01 * (truth.max_value() - truth.min_value()));

    Rng rng = make_rng(config.seed);
    Pose pose = make_pose(config.start_x.value_or(0.5 * (workspace.x0 + workspace.x1)),
                          config.start_y.value_or(0.5 * (workspace.y0 + workspace.y1)),
                          config.start_heading);

    GaussianProcess gp(config.gp);
    std::vector<Point2> train_x;
    std::vector<double> train_y;
    std::vector<Point2> sample_locations;

    MissionLog log;
    log.final_prediction = predict_grid(gp, truth, mu, sigma);

    while (log.total_samples < config.mission_samples) {
        const auto t0 = std::chrono::steady_clock::now();

        SearchParams params;
        params.budget = config.planner_budget;
        params.rollout_depth = config.rollout_depth;
        params.remaining_samples = config.mission_samples - log.total_samples;
        params.mission_samples = log.total_samples;
        if (config.schedule && log.total_samples < config.schedule->switch_samples)
            params.preference = config.schedule->objective;

        // A cornered pose gets up to three turn-in-place retries.
        SearchResult result;
        bool planned = false;
        Pose plan_pose = pose;
        for (int attempt = 0; attempt < 4 && !planned; ++attempt) {
            try {
                result = search(plan_pose, gp, config.reward, config.prims, workspace, params,
                                rng);
                planned = true;
            } catch (const NoFeasibleActions&) {
                plan_pose = make_pose(plan_pose.x, plan_pose.y, plan_pose.heading + M_PI_2);
            }
        }
        if (!planned) {
            log.aborted = true;
            break;
        }

        for (const Pose& sample : result.path.samples) {
            const Point2 p = sample.position();
            const double value = observe(truth, p, noise_std, rng);
            log.samples.push_back({p, value});
            sample_locations.push_back(p);
            train_x.push_back(p);
            train_y.push_back((value - mu) / sigma);
            log.total_samples += 1;
        }
        gp = GaussianProcess::fit(config.gp, train_x, train_y);
        pose = result.path.end;

        log.final_prediction = predict_grid(gp, truth, mu, sigma);

        MissionRecord record;
        record.samples = log.total_samples;
        record.pose = pose;
        record.action_index = result.action_index;
        record.metrics = metrics(log.final_prediction, truth, sample_locations);
        record.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        log.records.push_back(record);
        if (sink) sink(record);
    }
    return log;
}

std::string mission_csv_header() {
    return "samples,pose_x,pose_y,pose_heading,action,rmse,mae,hotspot_rmse,hotspot_mae,"
           "hotspot_sample_pct";
}

std::string mission_csv_row(const MissionRecord& r) {
    std::string row = std::to_string(r.samples);
    row += ',' + fmt_g(r.pose.x);
    row += ',' + fmt_g(r.pose.y);
    row += ',' + fmt_g(r.pose.heading);
    row += ',' + std::to_string(r.action_index);
    row += ',' + fmt_g(r.metrics.rmse);
    row += ',' + fmt_g(r.metrics.mae);
    row += ',' + fmt_g(r.metrics.hotspot_rmse);
    row += ',' + fmt_g(r.metrics.hotspot_mae);
    row += ',' + fmt_g(r.metrics.hotspot_sample_pct);
    return row;
}

void write_mission_csv(const MissionLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mission_csv: cannot open " + path.string());
    out << "#pareto-mcts-log v1\n" << mission_csv_header() << '\n';
    for (const MissionRecord& r : log.records) out << mission_csv_row(r) << '\n';
    if (!out) throw std::runtime_error("write_mission_csv: write failed for " + path.string());
}

void write_samples_csv(const MissionLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_samples_csv: cannot open " + path.string());
    out << "#pareto-mcts-log v1\nx,y,value\n";
    for (const SamplePoint& s : log.samples) {
        out << fmt_g(s.location.x) << ',' << fmt_g(s.location.y) << ',' << fmt_g(s.value)
            << '\n';
    }
    if (!out) throw std::runtime_error("write_samples_csv: write failed for " + path.string());
}

} // namespace pmcts
