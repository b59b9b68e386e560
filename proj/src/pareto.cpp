#include "pmcts/pareto.hpp"

#include <cmath>
#include <stdexcept>

namespace pmcts {

bool dominates(const RewardVector& a, const RewardVector& b) {
    a.require_same_dims(b);
    bool strictly_better = false;
    for (std::size_t d = 0; d < a.dims(); ++d) {
        if (a[d] < b[d]) return false;
        if (a[d] > b[d]) strictly_better = true;
    }
    return strictly_better;
}

bool weakly_dominates(const RewardVector& a, const RewardVector& b) {
    a.require_same_dims(b);
    for (std::size_t d = 0; d < a.dims(); ++d) {
        if (a[d] < b[d]) return false;
    }
    return true;
}

bool incomparable(const RewardVector& a, const RewardVector& b) {
    a.require_same_dims(b);
    bool above = false;
    bool below = false;
    for (std::size_t d = 0; d < a.dims(); ++d) {
        if (a[d] > b[d]) above = true;
        if (a[d] < b[d]) below = true;
    }
    return above && below;
}

bool non_dominated_by(const RewardVector& a, const RewardVector& b) {
    a.require_same_dims(b);
    for (std::size_t d = 0; d < a.dims(); ++d) {
        if (a[d] > b[d]) return true;
    }
    return false;
}

std::vector<std::size_t> pareto_front(std::span<const RewardVector> points) {
    if (points.empty()) throw std::invalid_argument("pareto_front: empty input");
    const std::size_t dims = points.front().dims();
    for (const RewardVector& p : points) {
        if (p.dims() != dims) throw std::invalid_argument("pareto_front: mixed dimensions");
    }

    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool is_dominated = false;
        for (std::size_t j = 0; j < points.size() && !is_dominated; ++j) {
            if (j != i && dominates(points[j], points[i])) is_dominated = true;
        }
        if (!is_dominated) front.push_back(i);
    }
    return front;
}

double pareto_ucb_bias(double total_n, double child_n, std::size_t dims) {
    return std::sqrt((4.0 * std::log(total_n) + std::log(static_cast<double>(dims))) /
                     (2.0 * child_n));
}

} // namespace pmcts
