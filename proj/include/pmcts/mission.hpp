#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmcts/environment.hpp"
#include "pmcts/gp.hpp"
#include "pmcts/planner.hpp"

namespace pmcts {

// Preference applies while fewer than switch_samples samples have been
// collected; afterwards the front choice is unbiased.
struct PreferenceSchedule {
    std::size_t objective = 0;
    std::uint64_t switch_samples = 0;
};

struct MissionConfig {
    std::string env;  // "synth:<seed>" or "file:<path>"
    int env_downsample = 1;
    int synth_sources = 3;
    int synth_grid = 30;
    Extent extent{0.0, 0.0, 10.0, 10.0};  // synth only; file grids carry their own

    GpHyperparams gp;
    PrimitiveParams prims;
    RewardSpec reward;

    int planner_budget = 3000;
    int rollout_depth = 4;

    std::uint64_t mission_samples = 600;  // B
    std::optional<PreferenceSchedule> schedule;
    std::uint64_t seed = 1;
    std::optional<double> start_x;  // default: workspace center
    std::optional<double> start_y;
    double start_heading = 0.0;
    std::optional<double> obs_noise_std;  // default: 1% of the field range
};

// Key = value file with '#' comments. Paths are resolved relative to the
// config file. Throws on unknown keys, malformed values, or invariant
// violations (B <= 0, switch-over beyond B, missing files).
MissionConfig load_config(const std::filesystem::path& path);

// Ground truth for the configured environment selector.
FieldGrid build_environment(const MissionConfig& config);

struct MetricRecord {
    double rmse = 0.0;
    double mae = 0.0;
    double hotspot_rmse = 0.0;
    double hotspot_mae = 0.0;
    double hotspot_sample_pct = 0.0;  // [0, 100]
};

// Error metrics over all cells plus the hotspot variants restricted to
// cells whose true value exceeds the field median.
MetricRecord metrics(const FieldGrid& prediction, const FieldGrid& truth,
                     std::span<const Point2> samples);

// Posterior mean rasterized at the template's cell centers,
// back-transformed by raw = mean * scale + offset.
FieldGrid predict_grid(const GaussianProcess& gp, const FieldGrid& grid_template,
                       double offset = 0.0, double scale = 1.0);

struct MissionRecord {
    std::uint64_t samples = 0;  // total collected after this replan
    Pose pose;                  // after executing the chosen primitive
    std::size_t action_index = 0;
    MetricRecord metrics;
    double wall_ms = 0.0;  // in-memory only; excluded from the CSV schema
};

struct SamplePoint {
    Point2 location;
    double value = 0.0;  // raw units
};

struct MissionLog {
    std::vector<MissionRecord> records;
    std::vector<SamplePoint> samples;
    std::uint64_t total_samples = 0;
    bool aborted = false;
    FieldGrid final_prediction;  // raw units
};

using RecordSink = std::function<void(const MissionRecord&)>;

// Online replanning loop: search, execute the chosen primitive, observe
// along its samples, refit the model, log metrics; repeats until the
// sample budget is met. A cornered pose is retried from a perturbed
// heading up to three times before aborting with the partial log.
MissionLog run_mission(const MissionConfig& config, const RecordSink& sink = {});

// CSV serialization. mission.csv carries one row per replan; samples.csv
// one row per observation. Both start with "#pareto-mcts-log v1".
std::string mission_csv_header();
std::string mission_csv_row(const MissionRecord& record);
void write_mission_csv(const MissionLog& log, const std::filesystem::path& path);
void write_samples_csv(const MissionLog& log, const std::filesystem::path& path);

} // namespace pmcts
