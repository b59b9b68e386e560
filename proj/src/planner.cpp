#include "pmcts/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace pmcts {

RewardKind reward_kind_from_string(const std::string& name) {
    if (name == "variance_reduction") return RewardKind::variance_reduction;
    if (name == "value_sum") return RewardKind::value_sum;
    if (name == "ucb_replanning") return RewardKind::ucb_replanning;
    throw std::invalid_argument("unknown reward kind '" + name + "'");
}

const char* to_string(RewardKind kind) {
    switch (kind) {
        case RewardKind::variance_reduction: return "variance_reduction";
        case RewardKind::value_sum: return "value_sum";
        case RewardKind::ucb_replanning: return "ucb_replanning";
    }
    return "?";
}

bool RewardSpec::has(RewardKind kind) const {
    for (RewardKind k : objectives) {
        if (k == kind) return true;
    }
    return false;
}

RewardNormalizer::RewardNormalizer(std::size_t dims)
    : lo_(dims, 0.0), hi_(dims, 0.0), seen_(dims, false) {}

void RewardNormalizer::observe_bound(std::size_t d, double raw) {
    if (!seen_[d]) {
        lo_[d] = raw;
        hi_[d] = raw;
        seen_[d] = true;
        return;
    }
    if (raw < lo_[d]) lo_[d] = raw;
    if (raw > hi_[d]) hi_[d] = raw;
}

double RewardNormalizer::normalize(std::size_t d, double raw) {
    observe_bound(d, raw);
    if (hi_[d] <= lo_[d]) return 0.5;
    return (raw - lo_[d]) / (hi_[d] - lo_[d]);
}

std::vector<double> raw_path_objectives(const PrimitivePath& path, const GaussianProcess& gp,
                                        FantasyChain& chain, const RewardSpec& spec,
                                        std::uint64_t mission_samples) {
    const bool need_variance = spec.has(RewardKind::variance_reduction);
    const bool need_mean =
        spec.has(RewardKind::value_sum) || spec.has(RewardKind::ucb_replanning);
    const bool need_ucb = spec.has(RewardKind::ucb_replanning);
    const double beta_t =
        spec.beta0 * std::sqrt(std::log(1.0 + static_cast<double>(mission_samples)));

    double variance_sum = 0.0;
    double mean_sum = 0.0;
    double ucb_sum = 0.0;
    for (const Pose& sample : path.samples) {
        const Point2 p = sample.position();
        double mean = 0.0;
        if (need_mean) mean = gp.predict_mean(p);
        if (need_variance) variance_sum += chain.observe_variance(p);
        if (spec.has(RewardKind::value_sum)) mean_sum += mean;
        if (need_ucb) ucb_sum += mean + beta_t * std::sqrt(gp.predict_variance(p));
    }

    std::vector<double> raw(spec.dims(), 0.0);
    for (std::size_t d = 0; d < spec.dims(); ++d) {
        switch (spec.objectives[d]) {
            case RewardKind::variance_reduction: raw[d] = variance_sum; break;
            case RewardKind::value_sum: raw[d] = mean_sum; break;
            case RewardKind::ucb_replanning: raw[d] = ucb_sum; break;
        }
    }
    return raw;
}

RewardVector path_reward(const PrimitivePath& path, const GaussianProcess& gp,
                         FantasyChain& chain, RewardNormalizer& normalizer,
                         const RewardSpec& spec, std::uint64_t mission_samples) {
    const std::vector<double> raw = raw_path_objectives(path, gp, chain, spec, mission_samples);
    RewardVector reward(spec.dims());
    for (std::size_t d = 0; d < spec.dims(); ++d) reward[d] = normalizer.normalize(d, raw[d]);
    return reward;
}

namespace {

// Upper bound on samples per primitive: chord plus a full extra turn.
std::size_t max_samples_per_primitive(const PrimitiveParams& prims) {
    const double max_len = prims.arc_length + 3.0 * M_PI * prims.turn_radius;
    return static_cast<std::size_t>(std::ceil(max_len / prims.sample_spacing)) + 2;
}

} // namespace

ParetoSearch::ParetoSearch(const GaussianProcess& gp, const RewardSpec& spec,
                           const PrimitiveParams& prims, const Extent& workspace,
                           const SearchParams& params)
    : gp_(gp),
      spec_(spec),
      prims_(prims),
      workspace_(workspace),
      params_(params),
      normalizer_(spec.dims()),
      chain_(gp, static_cast<std::size_t>(params.rollout_depth) *
                         max_samples_per_primitive(prims) +
                     4) {
    if (spec_.dims() == 0) throw std::invalid_argument("ParetoSearch: empty reward spec");
    if (params_.budget < 1) throw std::invalid_argument("ParetoSearch: budget must be >= 1");
    if (params_.rollout_depth < 0)
        throw std::invalid_argument("ParetoSearch: rollout_depth must be >= 0");
    if (params_.preference && *params_.preference >= spec_.dims())
        throw std::invalid_argument("ParetoSearch: preference objective out of range");
}

std::unique_ptr<TreeNode> ParetoSearch::make_node(const Pose& state, TreeNode* parent) {
    auto node = std::make_unique<TreeNode>();
    node->state = state;
    node->parent = parent;
    node->total = RewardVector::zeros(spec_.dims());
    node->samples_along = parent ? parent->samples_along : 0;
    std::vector<PrimitivePath> actions = feasible_primitives(state, prims_, workspace_);
    node->untried.reserve(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i)
        node->untried.emplace_back(i, std::move(actions[i]));
    return node;
}

bool ParetoSearch::is_terminal(const TreeNode& node) const {
    return node.samples_along >= params_.remaining_samples;
}

std::size_t ParetoSearch::pareto_best_child_index(const TreeNode& node, Rng& rng) const {
    if (node.children.empty())
        throw std::logic_error("pareto_best_child: node has no children");

    double local_n = 0.0;
    for (const auto& child : node.children) {
        if (child->visits == 0)
            throw std::logic_error("pareto_best_child: unvisited child (selection contract)");
        local_n += static_cast<double>(child->visits);
    }

    std::vector<RewardVector> ucb;
    ucb.reserve(node.children.size());
    for (const auto& child : node.children) {
        const double n_k = static_cast<double>(child->visits);
        const double bias = pareto_ucb_bias(local_n, n_k, spec_.dims());
        ucb.push_back(child->total.scaled(1.0 / n_k).shifted(bias));
    }

    const std::vector<std::size_t> front = pareto_front(ucb);
    if (params_.preference) {
        const std::size_t d = *params_.preference;
        std::size_t best = front.front();
        for (std::size_t idx : front) {
            if (ucb[idx][d] > ucb[best][d]) best = idx;
        }
        return best;
    }
    if (front.size() == 1) return front.front();
    return front[uniform_index(rng, front.size())];
}

TreeNode* ParetoSearch::selection(TreeNode* root, Rng& rng) {
    TreeNode* v = root;
    while (!is_terminal(*v) && v->untried.empty() && !v->children.empty())
        v = v->children[pareto_best_child_index(*v, rng)].get();
    return v;
}

TreeNode* ParetoSearch::expansion(TreeNode* node, Rng& rng) {
    if (node->untried.empty()) throw std::logic_error("expansion: no untried actions");
    const std::size_t pick = uniform_index(rng, node->untried.size());
    auto [action_index, path] = std::move(node->untried[pick]);
    node->untried[pick] = std::move(node->untried.back());
    node->untried.pop_back();

    std::unique_ptr<TreeNode> child = make_node(path.end, node);
    child->incoming = std::move(path);
    child->action_index = action_index;
    child->samples_along = node->samples_along + child->incoming.samples.size();
    node->children.push_back(std::move(child));
    return node->children.back().get();
}

RewardVector ParetoSearch::simulate(const Pose& state, Rng& rng) {
    chain_.reset();
    RewardVector total = RewardVector::zeros(spec_.dims());
    Pose pose = state;
    for (int depth = 0; depth < params_.rollout_depth; ++depth) {
        const std::vector<PrimitivePath> actions =
            feasible_primitives(pose, prims_, workspace_);
        if (actions.empty()) break;
        const PrimitivePath& path = actions[uniform_index(rng, actions.size())];
        total += path_reward(path, gp_, chain_, normalizer_, spec_, params_.mission_samples);
        pose = path.end;
    }
    return total;
}

void ParetoSearch::backpropagate(TreeNode* leaf, const RewardVector& reward) {
    for (TreeNode* v = leaf; v != nullptr; v = v->parent) {
        v->visits += 1;
        v->total += reward;
    }
}

SearchResult ParetoSearch::run(const Pose& root_state, Rng& rng) {
    std::unique_ptr<TreeNode> root = make_node(make_pose(root_state.x, root_state.y,
                                                         root_state.heading),
                                               nullptr);
    const std::size_t root_actions = root->untried.size();
    if (root_actions == 0)
        throw NoFeasibleActions("search: no feasible actions at the root pose");
    if (static_cast<std::size_t>(params_.budget) < root_actions)
        throw std::invalid_argument("search: budget smaller than the root action count");

    for (int iteration = 0; iteration < params_.budget; ++iteration) {
        TreeNode* v = selection(root.get(), rng);
        if (!is_terminal(*v) && !v->untried.empty()) {
            TreeNode* child = expansion(v, rng);
            backpropagate(child, simulate(child->state, rng));
        } else {
            // Terminal or cornered: an empty rollout contributes nothing.
            backpropagate(v, RewardVector::zeros(spec_.dims()));
        }
    }

    const TreeNode* best = nullptr;
    for (const auto& child : root->children) {
        if (!best || child->visits > best->visits) best = child.get();
    }
    if (!best) throw std::logic_error("search: root was never expanded");

    SearchResult result;
    result.action_index = best->action_index;
    result.path = best->incoming;
    result.root_visits.assign(root_actions, 0);
    for (const auto& child : root->children)
        result.root_visits[child->action_index] = child->visits;
    result.tree = std::move(root);
    return result;
}

SearchResult search(const Pose& root_state, const GaussianProcess& gp, const RewardSpec& spec,
                    const PrimitiveParams& prims, const Extent& workspace,
                    const SearchParams& params, Rng& rng) {
    ParetoSearch searcher(gp, spec, prims, workspace, params);
    return searcher.run(root_state, rng);
}

} // namespace pmcts
