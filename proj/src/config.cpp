#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pmcts/mission.hpp"

namespace pmcts {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer value for '" + key + "': " + value);
    }
}

} // namespace

MissionConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path.string());

    MissionConfig config;
    config.reward.objectives = {RewardKind::variance_reduction, RewardKind::value_sum};

    std::optional<std::size_t> preference_objective;
    std::uint64_t preference_switch = 0;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: " + path.string() + " line " +
                                     std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) continue;  // blank value keeps the default

        if (key == "env") {
            config.env = value;
        } else if (key == "env_downsample") {
            config.env_downsample = static_cast<int>(parse_int(key, value));
        } else if (key == "synth_sources") {
            config.synth_sources = static_cast<int>(parse_int(key, value));
        } else if (key == "synth_grid") {
            config.synth_grid = static_cast<int>(parse_int(key, value));
        } else if (key == "extent") {
            std::istringstream ss(value);
            char c1, c2, c3;
            if (!(ss >> config.extent.x0 >> c1 >> config.extent.y0 >> c2 >> config.extent.x1 >>
                  c3 >> config.extent.y1))
                throw std::runtime_error("config: bad extent '" + value + "'");
        } else if (key == "gp_signal_var") {
            config.gp.signal_var = parse_double(key, value);
        } else if (key == "gp_length_scale") {
            config.gp.length_scale = parse_double(key, value);
        } else if (key == "gp_noise_var") {
            config.gp.noise_var = parse_double(key, value);
        } else if (key == "gp_max_points") {
            config.gp.max_points = static_cast<std::size_t>(parse_int(key, value));
        } else if (key == "prim_count") {
            config.prims.count = static_cast<int>(parse_int(key, value));
        } else if (key == "prim_arc_length") {
            config.prims.arc_length = parse_double(key, value);
        } else if (key == "prim_turn_radius") {
            config.prims.turn_radius = parse_double(key, value);
        } else if (key == "prim_sample_spacing") {
            config.prims.sample_spacing = parse_double(key, value);
        } else if (key == "objectives") {
            config.reward.objectives.clear();
            std::istringstream ss(value);
            std::string token;
            while (std::getline(ss, token, ',')) {
                token = trim(token);
                if (!token.empty())
                    config.reward.objectives.push_back(reward_kind_from_string(token));
            }
        } else if (key == "beta0") {
            config.reward.beta0 = parse_double(key, value);
        } else if (key == "planner_budget") {
            config.planner_budget = static_cast<int>(parse_int(key, value));
        } else if (key == "rollout_depth") {
            config.rollout_depth = static_cast<int>(parse_int(key, value));
        } else if (key == "mission_samples") {
            config.mission_samples = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "preference_objective") {
            preference_objective = static_cast<std::size_t>(parse_int(key, value));
        } else if (key == "preference_switch_samples") {
            preference_switch = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "start_x") {
            config.start_x = parse_double(key, value);
        } else if (key == "start_y") {
            config.start_y = parse_double(key, value);
        } else if (key == "start_heading") {
            config.start_heading = parse_double(key, value);
        } else if (key == "obs_noise_std") {
            config.obs_noise_std = parse_double(key, value);
        } else {
            throw std::runtime_error("config: " + path.string() + " line " +
                                     std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }

    if (config.env.empty())
        throw std::runtime_error("config: " + path.string() + ": missing required key 'env'");
    if (config.env.rfind("file:", 0) == 0) {
        // Grid paths are relative to the config file.
        std::filesystem::path grid = config.env.substr(5);
        if (grid.is_relative()) grid = path.parent_path() / grid;
        if (!std::filesystem::exists(grid))
            throw std::runtime_error("config: referenced grid does not exist: " + grid.string());
        config.env = "file:" + grid.string();
    }
    if (config.mission_samples == 0)
        throw std::runtime_error("config: mission_samples must be positive");
    if (config.reward.objectives.empty())
        throw std::runtime_error("config: objectives must not be empty");
    if (preference_objective) {
        if (*preference_objective >= config.reward.dims())
            throw std::runtime_error("config: preference_objective out of range");
        if (preference_switch > config.mission_samples)
            throw std::runtime_error(
                "config: preference_switch_samples exceeds mission_samples");
        config.schedule = PreferenceSchedule{*preference_objective, preference_switch};
    }
    return config;
}

} // namespace pmcts
