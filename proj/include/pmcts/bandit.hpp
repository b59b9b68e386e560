#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pmcts/pareto.hpp"
#include "pmcts/reward_vector.hpp"
#include "pmcts/rng.hpp"

namespace pmcts {

enum class ArmKind { bernoulli, deterministic };

// One bandit arm; every sampled reward component lies in [0, 1].
struct BanditArm {
    RewardVector true_mean;
    ArmKind kind = ArmKind::bernoulli;

    RewardVector sample(Rng& rng) const;
};

// Selection bookkeeping: per-arm pull counts and cumulative rewards.
struct PullLedger {
    std::vector<std::uint64_t> counts;
    std::vector<RewardVector> cumulative;
    std::uint64_t step = 0;

    PullLedger(std::size_t arm_count, std::size_t dims);

    std::size_t arm_count() const { return counts.size(); }
    void record(std::size_t arm, const RewardVector& reward);
    RewardVector average(std::size_t arm) const;
};

// U(k) = mean reward + sqrt((4 ln n + ln D) / (2 n_k)) on every component.
// Requires every arm pulled at least once.
std::vector<RewardVector> pareto_ucb_vectors(const PullLedger& ledger, std::size_t dims);

// One step of the selection policy: each arm once in the first K steps
// (lowest index first), then a uniformly random member of the Pareto front
// of the UCB vectors. The generator is consumed only when the front has
// more than one member, which keeps shared-seed comparisons against a
// scalar UCB implementation exact.
std::size_t policy_step(const PullLedger& ledger, std::size_t dims, Rng& rng);

struct MostDominant {
    std::size_t index;  // k*
    RewardVector gap;   // Delta_k = mu* - mu_k
};

// The front member farthest from arm k: per candidate k', the minimum
// per-dimension gap eps_{k'} = min_d (mu_{k',d} - mu_{k,d}); k* maximizes
// eps. Every front member must dominate arm k.
MostDominant most_dominant_optimal(std::size_t k, std::span<const std::size_t> front,
                                   std::span<const RewardVector> means);

struct BanditTrialTrace {
    std::vector<std::uint32_t> choices;                      // arm per step
    std::vector<RewardVector> rewards;                       // sampled reward per step
    std::vector<std::uint8_t> in_front;                      // chosen arm in true front
    std::vector<std::vector<std::uint64_t>> checkpoint_counts;  // [checkpoint][arm]
};

struct BanditExperiment {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::size_t> optimal_arms;  // front of the true means
    std::vector<BanditTrialTrace> trials;
};

// Runs `trials` independent seeded trials of the selection policy.
// Checkpoints are the powers of ten up to the horizon plus the horizon
// itself. Deterministic given (arms, horizon, trials, seed).
BanditExperiment run_experiment(std::span<const BanditArm> arms, std::uint64_t horizon,
                                std::size_t trials, std::uint64_t seed);

// Fraction of steps in [from_step, to_step] (1-based, inclusive) whose
// chosen arm was outside the true Pareto set.
double failure_frequency(const BanditTrialTrace& trace, std::uint64_t from_step,
                         std::uint64_t to_step);

struct LogFit {
    double intercept;
    double slope;
};

// Least-squares fit of counts ~ a + b ln(n) over the checkpoints.
LogFit fit_log_counts(std::span<const std::uint64_t> checkpoints,
                      std::span<const std::uint64_t> counts);

// Arms file: one arm per line, comma-separated means, with an optional
// leading kind token ("bernoulli" or "deterministic").
std::vector<BanditArm> load_arms(const std::filesystem::path& path);

void write_trace_csv(const BanditExperiment& experiment, const std::filesystem::path& path);

} // namespace pmcts
