#include "pmcts/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace pmcts {

GaussianProcess::GaussianProcess(GpHyperparams hp) : hp_(hp) {
    if (!(hp_.signal_var > 0.0) || !(hp_.length_scale > 0.0) || hp_.noise_var < 0.0)
        throw std::invalid_argument("GaussianProcess: invalid hyperparameters");
}

double GaussianProcess::kernel(const Point2& a, const Point2& b) const {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double ll = hp_.length_scale * hp_.length_scale;
    return hp_.signal_var * std::exp(-(dx * dx + dy * dy) / (2.0 * ll));
}

GaussianProcess GaussianProcess::fit(const GpHyperparams& hp,
                                     std::span<const Point2> locations,
                                     std::span<const double> targets) {
    if (locations.size() != targets.size())
        throw std::invalid_argument("GaussianProcess::fit: size mismatch");
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (!std::isfinite(locations[i].x) || !std::isfinite(locations[i].y) ||
            !std::isfinite(targets[i]))
            throw std::invalid_argument("GaussianProcess::fit: non-finite input");
    }

    GaussianProcess model(hp);

    // Sliding cap: keep the newest observations.
    std::size_t offset = 0;
    if (hp.max_points > 0 && locations.size() > hp.max_points)
        offset = locations.size() - hp.max_points;
    const std::size_t n = locations.size() - offset;
    if (n == 0) return model;

    model.locations_.assign(locations.begin() + offset, locations.end());
    model.targets_.resize(n);
    for (std::size_t i = 0; i < n; ++i) model.targets_[i] = targets[offset + i];

    Eigen::MatrixXd gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double k = model.kernel(model.locations_[i], model.locations_[j]);
            gram(i, j) = k;
            gram(j, i) = k;
        }
        gram(i, i) += hp.noise_var;
    }

    // Factorize, adding doubling jitter on failure (up to 8 retries).
    double jitter = 1e-10 * hp.signal_var;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    int attempt = 0;
    while (llt.info() != Eigen::Success) {
        if (attempt >= 8)
            throw std::runtime_error("GaussianProcess::fit: factorization failed after max jitter");
        gram.diagonal().array() += jitter;
        jitter *= 2.0;
        ++attempt;
        llt.compute(gram);
    }

    model.chol_ = llt.matrixL();
    model.alpha_ = llt.solve(model.targets_);
    return model;
}

Eigen::VectorXd GaussianProcess::kernel_vector(const Point2& query) const {
    Eigen::VectorXd k(locations_.size());
    for (std::size_t i = 0; i < locations_.size(); ++i) k[i] = kernel(query, locations_[i]);
    return k;
}

double GaussianProcess::predict_mean(const Point2& query) const {
    if (!std::isfinite(query.x) || !std::isfinite(query.y))
        throw std::invalid_argument("GaussianProcess::predict: non-finite query");
    if (locations_.empty()) return 0.0;
    return kernel_vector(query).dot(alpha_);
}

std::vector<double> GaussianProcess::predict_mean_batch(std::span<const Point2> queries) const {
    if (locations_.empty()) return std::vector<double>(queries.size(), 0.0);
    const auto n = static_cast<Eigen::Index>(locations_.size());
    const auto m = static_cast<Eigen::Index>(queries.size());
    Eigen::MatrixXd cross(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j)
            cross(i, j) = kernel(queries[static_cast<std::size_t>(i)],
                                 locations_[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd means = cross * alpha_;
    return std::vector<double>(means.data(), means.data() + m);
}

double GaussianProcess::predict_variance(const Point2& query) const {
    if (!std::isfinite(query.x) || !std::isfinite(query.y))
        throw std::invalid_argument("GaussianProcess::predict: non-finite query");
    if (locations_.empty()) return hp_.signal_var;
    Eigen::VectorXd v = kernel_vector(query);
    chol_.triangularView<Eigen::Lower>().solveInPlace(v);
    return std::max(0.0, hp_.signal_var - v.squaredNorm());
}

GpPrediction GaussianProcess::predict(const Point2& query) const {
    if (!std::isfinite(query.x) || !std::isfinite(query.y))
        throw std::invalid_argument("GaussianProcess::predict: non-finite query");
    if (locations_.empty()) return {0.0, hp_.signal_var};
    Eigen::VectorXd k = kernel_vector(query);
    const double mean = k.dot(alpha_);
    chol_.triangularView<Eigen::Lower>().solveInPlace(k);
    return {mean, std::max(0.0, hp_.signal_var - k.squaredNorm())};
}

GaussianProcess GaussianProcess::fantasy_update(const Point2& location) const {
    std::vector<Point2> xs(locations_.begin(), locations_.end());
    std::vector<double> ys(targets_.data(), targets_.data() + targets_.size());
    xs.push_back(location);
    ys.push_back(predict_mean(location));
    return fit(hp_, xs, ys);
}

FantasyChain::FantasyChain(const GaussianProcess& base, std::size_t max_extra)
    : base_(&base), max_extra_(max_extra) {
    w_.resize(static_cast<Eigen::Index>(base.size()), static_cast<Eigen::Index>(max_extra));
    lf_.setZero(static_cast<Eigen::Index>(max_extra), static_cast<Eigen::Index>(max_extra));
    extra_.reserve(max_extra);
}

void FantasyChain::reset() { extra_.clear(); }

void FantasyChain::solve_parts(const Point2& query, Eigen::VectorXd& v_base,
                               Eigen::VectorXd& v_extra) const {
    const auto n = static_cast<Eigen::Index>(base_->size());
    const auto f = static_cast<Eigen::Index>(extra_.size());

    v_base.resize(n);
    if (n > 0) {
        v_base = base_->kernel_vector(query);
        base_->chol_.triangularView<Eigen::Lower>().solveInPlace(v_base);
    }

    v_extra.resize(f);
    if (f > 0) {
        for (Eigen::Index j = 0; j < f; ++j)
            v_extra[j] = base_->kernel(query, extra_[static_cast<std::size_t>(j)]);
        if (n > 0) v_extra.noalias() -= w_.leftCols(f).transpose() * v_base;
        lf_.topLeftCorner(f, f).triangularView<Eigen::Lower>().solveInPlace(v_extra);
    }
}

double FantasyChain::variance(const Point2& query) const {
    Eigen::VectorXd v_base, v_extra;
    solve_parts(query, v_base, v_extra);
    const double var =
        base_->hp_.signal_var - v_base.squaredNorm() - v_extra.squaredNorm();
    return std::max(0.0, var);
}

double FantasyChain::observe_variance(const Point2& query) {
    if (extra_.size() >= max_extra_)
        throw std::length_error("FantasyChain: fantasy capacity exhausted");

    Eigen::VectorXd v_base, v_extra;
    solve_parts(query, v_base, v_extra);
    const double var =
        std::max(0.0, base_->hp_.signal_var - v_base.squaredNorm() - v_extra.squaredNorm());

    const auto f = static_cast<Eigen::Index>(extra_.size());
    if (base_->size() > 0) w_.col(f) = v_base;
    if (f > 0) lf_.row(f).head(f) = v_extra.transpose();
    // Keep the factor positive definite even with zero noise and repeats.
    const double diag_sq =
        std::max(var + base_->hp_.noise_var, 1e-12 * base_->hp_.signal_var);
    lf_(f, f) = std::sqrt(diag_sq);
    extra_.push_back(query);
    return var;
}

} // namespace pmcts
