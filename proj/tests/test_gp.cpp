#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pmcts/gp.hpp"
#include "pmcts/rng.hpp"
#include "support/naive_gp_oracle.hpp"

using pmcts::FantasyChain;
using pmcts::GaussianProcess;
using pmcts::GpHyperparams;
using pmcts::Point2;

namespace {

std::vector<Point2> random_points(pmcts::Rng& rng, std::size_t n, double span = 10.0) {
    std::vector<Point2> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({pmcts::uniform_real(rng, 0.0, span), pmcts::uniform_real(rng, 0.0, span)});
    return pts;
}

std::vector<double> random_targets(pmcts::Rng& rng, std::size_t n) {
    std::vector<double> ys(n);
    for (double& y : ys) y = pmcts::uniform_real(rng, -2.0, 2.0);
    return ys;
}

} // namespace

TEST_CASE("prior model predicts zero mean and full variance") {
    GpHyperparams hp{2.5, 1.0, 0.1, 1000};
    GaussianProcess gp(hp);
    const auto pred = gp.predict({3.0, -4.0});
    CHECK(pred.mean == doctest::Approx(0.0));
    CHECK(pred.variance == doctest::Approx(2.5));
}

TEST_CASE("noiseless training point is interpolated") {
    GpHyperparams hp{1.0, 1.0, 0.0, 1000};
    const std::vector<Point2> xs{{2.0, 3.0}};
    const std::vector<double> ys{0.7};
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);
    const auto pred = gp.predict({2.0, 3.0});
    CHECK(pred.mean == doctest::Approx(0.7).epsilon(1e-8));
    CHECK(pred.variance == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("far-field query reverts to the prior") {
    GpHyperparams hp{1.3, 0.5, 0.01, 1000};
    const std::vector<Point2> xs{{1.0, 1.0}, {2.0, 1.5}};
    const std::vector<double> ys{1.0, -1.0};
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);
    const auto pred = gp.predict({9.0, 9.0});
    CHECK(std::abs(pred.mean) < 1e-6);
    CHECK(pred.variance == doctest::Approx(1.3).epsilon(1e-6));
}

TEST_CASE("posterior matches the dense-solve oracle") {
    pmcts::Rng rng = pmcts::make_rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        GpHyperparams hp;
        hp.signal_var = pmcts::uniform_real(rng, 0.5, 3.0);
        hp.length_scale = pmcts::uniform_real(rng, 0.5, 2.0);
        hp.noise_var = pmcts::uniform_real(rng, 0.01, 0.3);
        const std::size_t n = 2 + pmcts::uniform_index(rng, 49);
        const auto xs = random_points(rng, n);
        const auto ys = random_targets(rng, n);
        const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);

        for (int q = 0; q < 5; ++q) {
            const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                               pmcts::uniform_real(rng, 0.0, 10.0)};
            const auto got = gp.predict(query);
            const auto want = oracle::predict(hp, xs, ys, query);
            REQUIRE(got.mean == doctest::Approx(want.mean).epsilon(1e-8));
            REQUIRE(got.variance ==
                    doctest::Approx(std::max(0.0, want.variance)).epsilon(1e-8));
        }
    }
}

TEST_CASE("posterior variance never exceeds the prior") {
    pmcts::Rng rng = pmcts::make_rng(8);
    GpHyperparams hp{2.0, 1.0, 0.05, 1000};
    const auto xs = random_points(rng, 30);
    const auto ys = random_targets(rng, 30);
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);
    for (int q = 0; q < 50; ++q) {
        const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                           pmcts::uniform_real(rng, 0.0, 10.0)};
        REQUIRE(gp.predict(query).variance <= hp.signal_var + 1e-9);
    }
}

TEST_CASE("fit is exchangeable under data permutation") {
    pmcts::Rng rng = pmcts::make_rng(9);
    GpHyperparams hp{1.0, 0.8, 0.02, 1000};
    auto xs = random_points(rng, 20);
    auto ys = random_targets(rng, 20);
    const GaussianProcess gp1 = GaussianProcess::fit(hp, xs, ys);

    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[pmcts::uniform_index(rng, i)]);
    std::vector<Point2> xs2;
    std::vector<double> ys2;
    for (std::size_t i : order) {
        xs2.push_back(xs[i]);
        ys2.push_back(ys[i]);
    }
    const GaussianProcess gp2 = GaussianProcess::fit(hp, xs2, ys2);

    for (int q = 0; q < 30; ++q) {
        const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                           pmcts::uniform_real(rng, 0.0, 10.0)};
        const auto p1 = gp1.predict(query);
        const auto p2 = gp2.predict(query);
        REQUIRE(p1.mean == doctest::Approx(p2.mean).epsilon(1e-9));
        REQUIRE(p1.variance == doctest::Approx(p2.variance).epsilon(1e-9));
    }
}

TEST_CASE("supersets never increase posterior variance") {
    pmcts::Rng rng = pmcts::make_rng(10);
    GpHyperparams hp{1.5, 1.0, 0.05, 1000};
    const auto xs = random_points(rng, 25);
    const auto ys = random_targets(rng, 25);
    for (const std::size_t small : {5UL, 10UL, 20UL}) {
        const GaussianProcess gp_small = GaussianProcess::fit(
            hp, std::span(xs).subspan(0, small), std::span(ys).subspan(0, small));
        const GaussianProcess gp_full = GaussianProcess::fit(hp, xs, ys);
        for (int q = 0; q < 25; ++q) {
            const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                               pmcts::uniform_real(rng, 0.0, 10.0)};
            REQUIRE(gp_full.predict(query).variance <=
                    gp_small.predict(query).variance + 1e-9);
        }
    }
}

TEST_CASE("noisy training point keeps residual variance") {
    GpHyperparams hp{1.0, 1.0, 0.2, 1000};
    const std::vector<Point2> xs{{5.0, 5.0}};
    const std::vector<double> ys{1.0};
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);
    const double var = gp.predict({5.0, 5.0}).variance;
    CHECK(var > 0.0);
    CHECK(var < hp.noise_var + hp.signal_var);
}

TEST_CASE("fantasy update shrinks variance and keeps means") {
    pmcts::Rng rng = pmcts::make_rng(11);
    GpHyperparams hp{1.0, 1.0, 0.1, 1000};
    const auto xs = random_points(rng, 12);
    const auto ys = random_targets(rng, 12);
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);

    const Point2 target{4.0, 6.0};
    const auto before = gp.predict(target);
    const GaussianProcess fantasy = gp.fantasy_update(target);
    const auto after = fantasy.predict(target);
    CHECK(after.variance < before.variance);
    CHECK(after.mean == doctest::Approx(before.mean).epsilon(1e-8));

    // Means are untouched everywhere, not just at the fantasy point.
    for (int q = 0; q < 20; ++q) {
        const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                           pmcts::uniform_real(rng, 0.0, 10.0)};
        REQUIRE(fantasy.predict(query).mean ==
                doctest::Approx(gp.predict(query).mean).epsilon(1e-8));
    }

    // Diminishing returns for a repeated fantasy at the same spot.
    const GaussianProcess fantasy2 = fantasy.fantasy_update(target);
    const double drop1 = before.variance - after.variance;
    const double drop2 = after.variance - fantasy2.predict(target).variance;
    CHECK(drop2 < drop1);
    CHECK(drop2 > 0.0);

    // Kernel locality: a far-away fantasy does not move the variance.
    const GaussianProcess far = gp.fantasy_update({100.0, 100.0});
    CHECK(far.predict(target).variance == doctest::Approx(before.variance).epsilon(1e-9));
}

TEST_CASE("fantasy chain matches chained fantasy updates") {
    pmcts::Rng rng = pmcts::make_rng(12);
    GpHyperparams hp{1.2, 0.9, 0.05, 1000};
    const auto xs = random_points(rng, 15);
    const auto ys = random_targets(rng, 15);
    const GaussianProcess base = GaussianProcess::fit(hp, xs, ys);

    FantasyChain chain(base, 32);
    GaussianProcess rolled = base;
    for (int step = 0; step < 8; ++step) {
        const Point2 p{pmcts::uniform_real(rng, 0.0, 10.0),
                       pmcts::uniform_real(rng, 0.0, 10.0)};
        const double chain_var = chain.observe_variance(p);
        REQUIRE(chain_var == doctest::Approx(rolled.predict(p).variance).epsilon(1e-9));
        rolled = rolled.fantasy_update(p);
    }
    // Chain queries between appends agree with the rolled model too.
    const Point2 probe{5.5, 5.5};
    REQUIRE(chain.variance(probe) ==
            doctest::Approx(rolled.predict(probe).variance).epsilon(1e-9));

    chain.reset();
    REQUIRE(chain.variance(probe) ==
            doctest::Approx(base.predict(probe).variance).epsilon(1e-12));
}

TEST_CASE("training cap keeps the newest points") {
    pmcts::Rng rng = pmcts::make_rng(13);
    GpHyperparams hp{1.0, 1.0, 0.05, 10};
    const auto xs = random_points(rng, 25);
    const auto ys = random_targets(rng, 25);
    const GaussianProcess capped = GaussianProcess::fit(hp, xs, ys);
    CHECK(capped.size() == 10);

    GpHyperparams uncapped = hp;
    uncapped.max_points = 1000;
    const GaussianProcess tail = GaussianProcess::fit(
        uncapped, std::span(xs).subspan(15), std::span(ys).subspan(15));
    for (int q = 0; q < 10; ++q) {
        const Point2 query{pmcts::uniform_real(rng, 0.0, 10.0),
                           pmcts::uniform_real(rng, 0.0, 10.0)};
        REQUIRE(capped.predict(query).mean ==
                doctest::Approx(tail.predict(query).mean).epsilon(1e-12));
    }
}

TEST_CASE("invalid inputs are rejected") {
    GpHyperparams hp;
    const std::vector<Point2> xs{{1.0, std::nan("")}};
    const std::vector<double> ys{1.0};
    CHECK_THROWS_AS(GaussianProcess::fit(hp, xs, ys), std::invalid_argument);

    const std::vector<Point2> ok{{1.0, 1.0}};
    const std::vector<double> bad{std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(GaussianProcess::fit(hp, ok, bad), std::invalid_argument);

    GaussianProcess gp(hp);
    CHECK_THROWS_AS(gp.predict({std::nan(""), 0.0}), std::invalid_argument);

    CHECK_THROWS_AS(GaussianProcess::fit(hp, ok, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("duplicate noiseless points survive via jitter") {
    GpHyperparams hp{1.0, 1.0, 0.0, 1000};
    const std::vector<Point2> xs{{1.0, 1.0}, {1.0, 1.0}};
    const std::vector<double> ys{0.5, 0.5};
    const GaussianProcess gp = GaussianProcess::fit(hp, xs, ys);
    CHECK(gp.predict({1.0, 1.0}).mean == doctest::Approx(0.5).epsilon(1e-6));
}
