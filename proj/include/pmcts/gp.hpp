#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "pmcts/geometry.hpp"

namespace pmcts {

// Squared-exponential kernel with fixed hyperparameters; no learning.
struct GpHyperparams {
    double signal_var = 1.0;    // sigma_f^2
    double length_scale = 1.0;  // km
    double noise_var = 1e-4;    // sigma_n^2
    std::size_t max_points = 1000;
};

struct GpPrediction {
    double mean = 0.0;
    double variance = 0.0;
};

// Posterior over the scalar environment field. Immutable after fit;
// fantasy_update returns a new model, so concurrent readers are safe.
class GaussianProcess {
public:
    explicit GaussianProcess(GpHyperparams hp = {});

    // Conditions on the given observations. Keeps only the newest
    // max_points observations when the training set exceeds the cap.
    // Throws on non-finite inputs, size mismatch, or factorization failure
    // after the jitter ladder is exhausted.
    static GaussianProcess fit(const GpHyperparams& hp,
                               std::span<const Point2> locations,
                               std::span<const double> targets);

    GpPrediction predict(const Point2& query) const;
    double predict_mean(const Point2& query) const;      // O(n)
    double predict_variance(const Point2& query) const;  // O(n^2)

    // Posterior means for many queries at once via one matrix product.
    std::vector<double> predict_mean_batch(std::span<const Point2> queries) const;

    // Model conditioned on a hypothetical observation at `location` whose
    // target is the current posterior mean there. Posterior means are
    // unchanged; variance shrinks as if the point had been measured.
    GaussianProcess fantasy_update(const Point2& location) const;

    std::size_t size() const { return locations_.size(); }
    const GpHyperparams& hyperparams() const { return hp_; }
    std::span<const Point2> locations() const { return locations_; }

    double kernel(const Point2& a, const Point2& b) const;

private:
    friend class FantasyChain;

    Eigen::VectorXd kernel_vector(const Point2& query) const;

    GpHyperparams hp_;
    std::vector<Point2> locations_;
    Eigen::VectorXd targets_;
    Eigen::MatrixXd chol_;   // lower-triangular L with L L^T = K + sigma_n^2 I
    Eigen::VectorXd alpha_;  // (K + sigma_n^2 I)^{-1} y
};

// Rollout-scoped fantasy conditioning. Shares the base model's cached
// factorization and extends it one appended location at a time, so a
// rollout pays O(n^2) per sample instead of a refit. Variance-only: the
// fantasy targets equal the posterior mean, which leaves means untouched.
class FantasyChain {
public:
    explicit FantasyChain(const GaussianProcess& base, std::size_t max_extra = 256);

    void reset();

    double variance(const Point2& query) const;

    // variance(query), then conditions on a fantasy observation there.
    double observe_variance(const Point2& query);

    std::size_t extra_count() const { return extra_.size(); }

private:
    void solve_parts(const Point2& query, Eigen::VectorXd& v_base,
                     Eigen::VectorXd& v_extra) const;

    const GaussianProcess* base_;
    std::size_t max_extra_;
    std::vector<Point2> extra_;
    Eigen::MatrixXd w_;   // base_n x max_extra, column j = L^{-1} k(base, extra_j)
    Eigen::MatrixXd lf_;  // max_extra x max_extra, lower factor of the extra block
};

} // namespace pmcts
