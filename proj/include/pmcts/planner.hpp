#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmcts/dubins.hpp"
#include "pmcts/gp.hpp"
#include "pmcts/pareto.hpp"
#include "pmcts/reward_vector.hpp"
#include "pmcts/rng.hpp"

namespace pmcts {

enum class RewardKind {
    variance_reduction,  // summed posterior variance under rollout fantasies
    value_sum,           // summed posterior mean
    ucb_replanning,      // scalar baseline: sum of mean + beta_t * stddev
};

RewardKind reward_kind_from_string(const std::string& name);
const char* to_string(RewardKind kind);

struct RewardSpec {
    std::vector<RewardKind> objectives;
    double beta0 = 1.0;  // ucb_replanning confidence scale

    std::size_t dims() const { return objectives.size(); }
    bool has(RewardKind kind) const;
};

// Running per-objective min/max collected at the root of one search; maps
// raw path rewards into [0, 1]. Values seen before min < max map to 0.5.
class RewardNormalizer {
public:
    explicit RewardNormalizer(std::size_t dims);

    // Widens the bounds with `raw`, then normalizes it.
    double normalize(std::size_t d, double raw);

    // Widens the bounds without normalizing (used to pre-seed tests).
    void observe_bound(std::size_t d, double raw);

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
    std::vector<bool> seen_;
};

// Raw (unnormalized) objective values for one primitive path. Variance
// terms come from the fantasy chain, which the call extends in sample
// order; means come from the real model only.
std::vector<double> raw_path_objectives(const PrimitivePath& path, const GaussianProcess& gp,
                                        FantasyChain& chain, const RewardSpec& spec,
                                        std::uint64_t mission_samples);

// raw_path_objectives pushed through the normalizer.
RewardVector path_reward(const PrimitivePath& path, const GaussianProcess& gp,
                         FantasyChain& chain, RewardNormalizer& normalizer,
                         const RewardSpec& spec, std::uint64_t mission_samples);

struct SearchParams {
    int budget = 3000;       // iterations per replan
    int rollout_depth = 4;   // primitives per simulation
    std::optional<std::size_t> preference;  // objective index, or none
    std::uint64_t remaining_samples = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t mission_samples = 0;  // samples collected so far (beta_t)
};

struct TreeNode {
    Pose state;
    PrimitivePath incoming;       // unset at the root
    std::size_t action_index = 0; // index into the root's feasible action list
    TreeNode* parent = nullptr;
    std::uint64_t visits = 0;     // n
    RewardVector total;           // X, element-wise sum of backpropagated rewards
    std::uint64_t samples_along = 0;  // mission samples consumed root -> here
    std::vector<std::unique_ptr<TreeNode>> children;  // in creation order
    std::vector<std::pair<std::size_t, PrimitivePath>> untried;
};

struct SearchResult {
    std::size_t action_index = 0;
    PrimitivePath path;
    std::vector<std::uint64_t> root_visits;  // by root action index
    std::unique_ptr<TreeNode> tree;          // root, retained for inspection
};

// Thrown when a pose admits no feasible actions; the mission loop retries
// from a perturbed heading.
struct NoFeasibleActions : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pareto MCTS over primitive-path actions. Runs selection, expansion,
// simulation and backpropagation for `budget` iterations and returns the
// action of the most visited root child (ties: lowest child index).
// Deterministic given identical inputs and generator state.
class ParetoSearch {
public:
    ParetoSearch(const GaussianProcess& gp, const RewardSpec& spec,
                 const PrimitiveParams& prims, const Extent& workspace,
                 const SearchParams& params);

    SearchResult run(const Pose& root_state, Rng& rng);

    // Building blocks, exposed for verification.
    TreeNode* selection(TreeNode* root, Rng& rng);
    TreeNode* expansion(TreeNode* node, Rng& rng);
    RewardVector simulate(const Pose& state, Rng& rng);
    static void backpropagate(TreeNode* leaf, const RewardVector& reward);
    std::size_t pareto_best_child_index(const TreeNode& node, Rng& rng) const;

    bool is_terminal(const TreeNode& node) const;
    RewardNormalizer& normalizer() { return normalizer_; }

private:
    std::unique_ptr<TreeNode> make_node(const Pose& state, TreeNode* parent);

    const GaussianProcess& gp_;
    const RewardSpec& spec_;
    const PrimitiveParams& prims_;
    const Extent& workspace_;
    SearchParams params_;
    RewardNormalizer normalizer_;
    FantasyChain chain_;
};

// One-shot convenience wrapper around ParetoSearch.
SearchResult search(const Pose& root_state, const GaussianProcess& gp, const RewardSpec& spec,
                    const PrimitiveParams& prims, const Extent& workspace,
                    const SearchParams& params, Rng& rng);

} // namespace pmcts
