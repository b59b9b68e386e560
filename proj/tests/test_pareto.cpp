#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "pmcts/pareto.hpp"
#include "pmcts/rng.hpp"

using pmcts::RewardVector;

namespace {

// Independent non-dominated-set oracle: incremental archive with raw
// element comparisons, no calls into the library predicates.
std::vector<std::size_t> archive_front(const std::vector<RewardVector>& points) {
    auto raw_dominates = [](const RewardVector& a, const RewardVector& b) {
        bool strict = false;
        for (std::size_t d = 0; d < a.dims(); ++d) {
            if (a[d] < b[d]) return false;
            if (a[d] > b[d]) strict = true;
        }
        return strict;
    };

    std::vector<std::size_t> archive;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j : archive) {
            if (raw_dominates(points[j], points[i])) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(archive,
                      [&](std::size_t j) { return raw_dominates(points[i], points[j]); });
        archive.push_back(i);
    }
    // Checking only archive members suffices: an erased point's dominator
    // chain always ends at a member, and dominance is transitive.
    std::sort(archive.begin(), archive.end());
    return archive;
}

RewardVector random_vector(pmcts::Rng& rng, std::size_t dims, double lo = 0.0, double hi = 1.0) {
    RewardVector v(dims);
    for (std::size_t d = 0; d < dims; ++d) v[d] = pmcts::uniform_real(rng, lo, hi);
    return v;
}

} // namespace

TEST_CASE("dominance relations on hand cases") {
    CHECK(pmcts::dominates({2, 3}, {1, 3}));
    CHECK_FALSE(pmcts::dominates({1, 1}, {1, 1}));
    CHECK_FALSE(pmcts::dominates({1, 2}, {2, 1}));

    CHECK(pmcts::weakly_dominates({1, 1}, {1, 1}));
    CHECK(pmcts::incomparable({1, 2}, {2, 1}));
    CHECK(pmcts::non_dominated_by({0, 5}, {9, 4}));
    CHECK_FALSE(pmcts::non_dominated_by({0, 4}, {9, 4}));
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(pmcts::dominates({1, 2}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(pmcts::weakly_dominates({1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pmcts::incomparable({1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pmcts::non_dominated_by({1}, {1, 2}), std::invalid_argument);
    const std::vector<RewardVector> mixed{{1, 2}, {1}};
    CHECK_THROWS_AS(pmcts::pareto_front(mixed), std::invalid_argument);
}

TEST_CASE("pareto_front hand cases") {
    const std::vector<RewardVector> a{{1, 2}, {2, 1}, {0, 0}};
    CHECK(pmcts::pareto_front(a) == std::vector<std::size_t>{0, 1});

    const std::vector<RewardVector> singleton{{3}};
    CHECK(pmcts::pareto_front(singleton) == std::vector<std::size_t>{0});

    // Equal non-dominated vectors are all retained.
    const std::vector<RewardVector> dup{{1, 2}, {1, 2}, {0, 1}};
    CHECK(pmcts::pareto_front(dup) == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(pmcts::pareto_front(std::vector<RewardVector>{}), std::invalid_argument);
}

TEST_CASE("dominance axioms over random vectors") {
    pmcts::Rng rng = pmcts::make_rng(101);
    for (int trial = 0; trial < 20000; ++trial) {
        const std::size_t dims = 1 + pmcts::uniform_index(rng, 5);
        // Correlated triple so dominance chains actually occur.
        RewardVector a = random_vector(rng, dims);
        RewardVector b(dims), c(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            b[d] = a[d] - pmcts::uniform_real(rng, 0.0, 0.3);
            c[d] = b[d] - pmcts::uniform_real(rng, 0.0, 0.3);
        }
        if (trial % 2 == 0) {
            b = random_vector(rng, dims);
            c = random_vector(rng, dims);
        }

        REQUIRE_FALSE(pmcts::dominates(a, a));
        REQUIRE(pmcts::weakly_dominates(a, a));
        if (pmcts::dominates(a, b)) {
            REQUIRE_FALSE(pmcts::dominates(b, a));
            REQUIRE(pmcts::weakly_dominates(a, b));
            REQUIRE_FALSE(pmcts::incomparable(a, b));
            if (pmcts::dominates(b, c)) REQUIRE(pmcts::dominates(a, c));
        }
        if (pmcts::weakly_dominates(a, b) && pmcts::weakly_dominates(b, c))
            REQUIRE(pmcts::weakly_dominates(a, c));
        REQUIRE(pmcts::incomparable(a, b) == pmcts::incomparable(b, a));
    }
}

TEST_CASE("pareto_front equals the archive oracle") {
    pmcts::Rng rng = pmcts::make_rng(202);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t dims = 1 + pmcts::uniform_index(rng, 5);
        const std::size_t count = 1 + pmcts::uniform_index(rng, 64);
        std::vector<RewardVector> points;
        points.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            // Coarse values so duplicates and ties occur.
            RewardVector v(dims);
            for (std::size_t d = 0; d < dims; ++d)
                v[d] = static_cast<double>(pmcts::uniform_index(rng, 6));
            points.push_back(v);
        }
        REQUIRE(pmcts::pareto_front(points) == archive_front(points));
    }
}

TEST_CASE("pareto_front is idempotent as a value set") {
    pmcts::Rng rng = pmcts::make_rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dims = 1 + pmcts::uniform_index(rng, 4);
        std::vector<RewardVector> points;
        for (int i = 0; i < 40; ++i) points.push_back(random_vector(rng, dims));

        const std::vector<std::size_t> front = pmcts::pareto_front(points);
        std::vector<RewardVector> front_points;
        for (std::size_t i : front) front_points.push_back(points[i]);
        const std::vector<std::size_t> again = pmcts::pareto_front(front_points);
        REQUIRE(again.size() == front_points.size());

        // Members are pairwise equal or incomparable.
        for (std::size_t i : front) {
            for (std::size_t j : front) {
                if (i != j) REQUIRE_FALSE(pmcts::dominates(points[i], points[j]));
            }
        }
    }
}

TEST_CASE("single-objective front is the argmax index set") {
    pmcts::Rng rng = pmcts::make_rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<RewardVector> points;
        for (int i = 0; i < 30; ++i)
            points.push_back(RewardVector{static_cast<double>(pmcts::uniform_index(rng, 8))});
        double best = -1.0;
        for (const RewardVector& p : points) best = std::max(best, p[0]);
        std::vector<std::size_t> argmax;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i][0] == best) argmax.push_back(i);
        }
        REQUIRE(pmcts::pareto_front(points) == argmax);
    }
}

TEST_CASE("ucb bias value and monotonicity") {
    // sqrt((4 ln 2 + ln 2) / 2)
    CHECK(pmcts::pareto_ucb_bias(2.0, 1.0, 2) == doctest::Approx(1.316384423867).epsilon(1e-9));
    CHECK(pmcts::pareto_ucb_bias(1.0, 1.0, 1) == doctest::Approx(0.0));

    for (double n : {2.0, 5.0, 50.0}) {
        CHECK(pmcts::pareto_ucb_bias(n + 1.0, 3.0, 2) > pmcts::pareto_ucb_bias(n, 3.0, 2));
        CHECK(pmcts::pareto_ucb_bias(n, 3.0, 3) > pmcts::pareto_ucb_bias(n, 3.0, 2));
    }
}
