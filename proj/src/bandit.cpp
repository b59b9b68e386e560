#include "pmcts/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmcts {

RewardVector BanditArm::sample(Rng& rng) const {
    if (kind == ArmKind::deterministic) return true_mean;
    RewardVector reward(true_mean.dims());
    for (std::size_t d = 0; d < true_mean.dims(); ++d)
        reward[d] = uniform_real01(rng) < true_mean[d] ? 1.0 : 0.0;
    return reward;
}

PullLedger::PullLedger(std::size_t arm_count, std::size_t dims)
    : counts(arm_count, 0), cumulative(arm_count, RewardVector::zeros(dims)) {}

void PullLedger::record(std::size_t arm, const RewardVector& reward) {
    counts[arm] += 1;
    cumulative[arm] += reward;
    step += 1;
}

RewardVector PullLedger::average(std::size_t arm) const {
    if (counts[arm] == 0) throw std::logic_error("PullLedger::average: arm never pulled");
    return cumulative[arm].scaled(1.0 / static_cast<double>(counts[arm]));
}

std::vector<RewardVector> pareto_ucb_vectors(const PullLedger& ledger, std::size_t dims) {
    std::vector<RewardVector> ucb;
    ucb.reserve(ledger.arm_count());
    const double n = static_cast<double>(ledger.step);
    for (std::size_t k = 0; k < ledger.arm_count(); ++k) {
        if (ledger.counts[k] == 0)
            throw std::logic_error("pareto_ucb_vectors: unpulled arm present");
        const double bias = pareto_ucb_bias(n, static_cast<double>(ledger.counts[k]), dims);
        ucb.push_back(ledger.average(k).shifted(bias));
    }
    return ucb;
}

std::size_t policy_step(const PullLedger& ledger, std::size_t dims, Rng& rng) {
    for (std::size_t k = 0; k < ledger.arm_count(); ++k) {
        if (ledger.counts[k] == 0) return k;
    }
    const std::vector<RewardVector> ucb = pareto_ucb_vectors(ledger, dims);
    const std::vector<std::size_t> front = pareto_front(ucb);
    if (front.size() == 1) return front.front();
    return front[uniform_index(rng, front.size())];
}

MostDominant most_dominant_optimal(std::size_t k, std::span<const std::size_t> front,
                                   std::span<const RewardVector> means) {
    if (front.empty()) throw std::invalid_argument("most_dominant_optimal: empty front");

    bool have_best = false;
    std::size_t best = 0;
    double best_eps = 0.0;
    for (std::size_t candidate : front) {
        if (!dominates(means[candidate], means[k]))
            throw std::invalid_argument(
                "most_dominant_optimal: front member does not dominate the arm");
        double eps = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < means[k].dims(); ++d)
            eps = std::min(eps, means[candidate][d] - means[k][d]);
        if (!have_best || eps > best_eps) {
            have_best = true;
            best = candidate;
            best_eps = eps;
        }
    }
    return {best, means[best] - means[k]};
}

BanditExperiment run_experiment(std::span<const BanditArm> arms, std::uint64_t horizon,
                                std::size_t trials, std::uint64_t seed) {
    if (arms.empty()) throw std::invalid_argument("run_experiment: no arms");
    if (trials == 0) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (horizon < arms.size())
        throw std::invalid_argument("run_experiment: horizon shorter than the arm count");
    const std::size_t dims = arms.front().true_mean.dims();
    for (const BanditArm& arm : arms) {
        if (arm.true_mean.dims() != dims)
            throw std::invalid_argument("run_experiment: mixed arm dimensions");
        for (double m : arm.true_mean) {
            if (m < 0.0 || m > 1.0)
                throw std::invalid_argument("run_experiment: arm means must lie in [0,1]");
        }
    }

    BanditExperiment experiment;
    for (std::uint64_t c = 100; c < horizon; c *= 10) experiment.checkpoints.push_back(c);
    if (experiment.checkpoints.empty() || experiment.checkpoints.back() != horizon)
        experiment.checkpoints.push_back(horizon);

    std::vector<RewardVector> means;
    means.reserve(arms.size());
    for (const BanditArm& arm : arms) means.push_back(arm.true_mean);
    experiment.optimal_arms = pareto_front(means);

    std::vector<std::uint8_t> optimal_mask(arms.size(), 0);
    for (std::size_t k : experiment.optimal_arms) optimal_mask[k] = 1;

    experiment.trials.reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = fork_rng(seed, trial);
        PullLedger ledger(arms.size(), dims);
        BanditTrialTrace trace;
        trace.choices.reserve(horizon);
        trace.rewards.reserve(horizon);
        trace.in_front.reserve(horizon);

        std::size_t next_checkpoint = 0;
        for (std::uint64_t step = 1; step <= horizon; ++step) {
            const std::size_t arm = policy_step(ledger, dims, rng);
            const RewardVector reward = arms[arm].sample(rng);
            ledger.record(arm, reward);
            trace.choices.push_back(static_cast<std::uint32_t>(arm));
            trace.rewards.push_back(reward);
            trace.in_front.push_back(optimal_mask[arm]);
            if (next_checkpoint < experiment.checkpoints.size() &&
                step == experiment.checkpoints[next_checkpoint]) {
                trace.checkpoint_counts.push_back(ledger.counts);
                ++next_checkpoint;
            }
        }
        experiment.trials.push_back(std::move(trace));
    }
    return experiment;
}

double failure_frequency(const BanditTrialTrace& trace, std::uint64_t from_step,
                         std::uint64_t to_step) {
    if (from_step < 1 || to_step > trace.choices.size() || from_step > to_step)
        throw std::invalid_argument("failure_frequency: bad step window");
    std::uint64_t failures = 0;
    for (std::uint64_t s = from_step; s <= to_step; ++s) {
        if (!trace.in_front[s - 1]) ++failures;
    }
    return static_cast<double>(failures) / static_cast<double>(to_step - from_step + 1);
}

LogFit fit_log_counts(std::span<const std::uint64_t> checkpoints,
                      std::span<const std::uint64_t> counts) {
    if (checkpoints.size() != counts.size() || checkpoints.size() < 2)
        throw std::invalid_argument("fit_log_counts: need >= 2 matching points");
    const double n = static_cast<double>(checkpoints.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const double x = std::log(static_cast<double>(checkpoints[i]));
        const double y = static_cast<double>(counts[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {(sy - slope * sx) / n, slope};
}

std::vector<BanditArm> load_arms(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_arms: cannot open " + path.string());

    std::vector<BanditArm> arms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string token;
        BanditArm arm;
        std::vector<double> means;
        while (std::getline(ss, token, ',')) {
            if (means.empty() && (token == "bernoulli" || token == "deterministic")) {
                arm.kind = token == "bernoulli" ? ArmKind::bernoulli : ArmKind::deterministic;
                continue;
            }
            try {
                means.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw std::runtime_error("load_arms: " + path.string() + " line " +
                                         std::to_string(lineno) + ": bad mean '" + token + "'");
            }
        }
        if (means.empty())
            throw std::runtime_error("load_arms: " + path.string() + " line " +
                                     std::to_string(lineno) + ": no means given");
        arm.true_mean = RewardVector(means.size());
        for (std::size_t d = 0; d < means.size(); ++d) arm.true_mean[d] = means[d];
        arms.push_back(std::move(arm));
    }
    if (arms.empty()) throw std::runtime_error("load_arms: " + path.string() + ": no arms");
    return arms;
}

void write_trace_csv(const BanditExperiment& experiment, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path.string());
    out << "#pareto-mcts-log v1\n";
    const std::size_t dims =
        experiment.trials.empty() ? 0 : experiment.trials.front().rewards.front().dims();
    out << "trial,step,arm";
    for (std::size_t d = 0; d < dims; ++d) out << ",reward_" << d;
    out << ",in_front\n";

    char buf[64];
    for (std::size_t trial = 0; trial < experiment.trials.size(); ++trial) {
        const BanditTrialTrace& trace = experiment.trials[trial];
        for (std::size_t i = 0; i < trace.choices.size(); ++i) {
            out << trial << ',' << (i + 1) << ',' << trace.choices[i];
            for (double component : trace.rewards[i]) {
                std::snprintf(buf, sizeof(buf), ",%.10g", component);
                out << buf;
            }
            out << ',' << static_cast<int>(trace.in_front[i]) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path.string());
}

} // namespace pmcts
