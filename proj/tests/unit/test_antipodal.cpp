#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "ultratree/antipodal.hpp"
#include "ultratree/boundary.hpp"
#include "ultratree/errors.hpp"

using namespace ultratree;
using support::e;

namespace {

// Copy of `s` with rho(i, j) multiplied by `f` (every pair when i == j).
ExtendedMetricSpace scaled(const ExtendedMetricSpace& s, double f, std::size_t i = 0, std::size_t j = 0) {
    const std::size_t n = s.size();
    std::vector<double> m(n * n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            const bool hit = (i == j) || (p == i && q == j) || (p == j && q == i);
            m[p * n + q] = s.raw_dist(PointId{p}, PointId{q}) * (hit ? f : 1.0);
        }
    return ExtendedMetricSpace::from_distances(s.labels(), s.omega() ? std::optional(s.omega()->index) : std::nullopt,
                                               m);
}

}  // namespace

TEST_CASE("antipodal diameter-1 recognition") {
    auto X = support::tree_E();
    auto r = bourdon_metric(X, X.point("a", 0));
    CHECK(is_antipodal_diam1(r));
    CHECK_FALSE(is_antipodal_diam1(scaled(r, 0.5)));
    CHECK_FALSE(is_antipodal_diam1(support::space_E()));
    // Pushing every unit entry of b's row down to 0.9 leaves b without a partner.
    auto r1 = bourdon_metric(X, X.point("a", 1));
    const auto b = r1.at("b");
    CHECK(is_antipodal_diam1(r1));
    auto m = r1;
    for (PointId q : r1.points())
        if (q != b && r1.raw_dist(b, q) == 1.0) m = scaled(m, 0.9, b.index, q.index);
    CHECK_FALSE(is_antipodal_diam1(m));
}

TEST_CASE("metric derivative on E") {
    auto X = support::tree_E();
    auto r0 = bourdon_metric(X, X.point("a", 0)), r1 = bourdon_metric(X, X.point("a", 1));
    CHECK(metric_derivative(r1, r0, r1.at("a")) == doctest::Approx(e));
    CHECK(metric_derivative(r1, r0, r1.at("w")) == doctest::Approx(1 / e));
    CHECK(metric_derivative(r0, r1, r1.at("a")) == doctest::Approx(1 / e));
    for (PointId z : r0.points()) CHECK(metric_derivative(r0, r0, z) == doctest::Approx(1.0));
    CHECK_THROWS_AS(metric_derivative(r0, scaled(r0, 0.5), r0.at("a")), ContractError);
    CHECK(dist_ma1(r0, r1) == doctest::Approx(1.0));
    CHECK(dist_ma1(r1, r0) == doctest::Approx(1.0));
    CHECK(dist_ma1(r0, r0) == doctest::Approx(0.0));
}

TEST_CASE("reconstructing a point from its Bourdon metric on E") {
    auto X = support::tree_E();
    auto r = bourdon_metric(X, X.point("a", 2));
    CHECK(X.same_point(reconstruct_point(X, r), X.point("a", 2)));
    CHECK_THROWS_AS(reconstruct_point(X, scaled(r, 1 + 1e-3, 0, 2)), ContractError);
    CHECK_THROWS_AS(reconstruct_point(X, support::space_E()), ContractError);
}

TEST_CASE("property: the derivative does not depend on the auxiliary pair") {
    support::for_random_spaces(61, 20, 3, 12, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        auto r1 = bourdon_metric(X, random_tree_point(X, rng)), r2 = bourdon_metric(X, random_tree_point(X, rng));
        const auto pts = s.points();
        for (PointId xi : pts) {
            const double ref = metric_derivative(r1, r2, xi);
            for (PointId eta : pts)
                for (PointId eta2 : pts) {
                    if (eta == xi || eta2 == xi || eta == eta2) continue;
                    CHECK(metric_derivative(r1, r2, xi, eta, eta2) == doctest::Approx(ref).epsilon(1e-9));
                }
        }
    });
}

TEST_CASE("property: derivative matches Busemann functions") {
    support::for_random_spaces(62, 30, 3, 16, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        const TreePoint x = random_tree_point(X, rng), y = random_tree_point(X, rng);
        auto rx = bourdon_metric(X, x), ry = bourdon_metric(X, y);
        double worst = -INFINITY;
        for (PointId z : s.points()) {
            const double b = busemann(X, iota(X, z), x, y);
            CHECK(std::log(metric_derivative(ry, rx, z)) == doctest::Approx(b).epsilon(1e-9).scale(1.0));
            worst = std::max(worst, -b);
        }
        CHECK(dist_ma1(rx, ry) == doctest::Approx(worst).epsilon(1e-9).scale(1.0));
    });
}

TEST_CASE("property: dist_ma1 is a metric on Bourdon metrics") {
    support::for_random_spaces(63, 25, 3, 12, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        const TreePoint x = random_tree_point(X, rng), y = random_tree_point(X, rng), z = random_tree_point(X, rng);
        auto rx = bourdon_metric(X, x), ry = bourdon_metric(X, y), rz = bourdon_metric(X, z);
        const double dxy = dist_ma1(rx, ry), dyz = dist_ma1(ry, rz), dxz = dist_ma1(rx, rz);
        CHECK(dist_ma1(rx, rx) == doctest::Approx(0.0).scale(1.0));
        CHECK(dxy >= -1e-12);
        CHECK(dxy == doctest::Approx(dist_ma1(ry, rx)).epsilon(1e-9).scale(1.0));
        CHECK(dxz <= dxy + dyz + 1e-9);
        CHECK(dxy == doctest::Approx(X.distance(x, y)).epsilon(1e-9).scale(1.0));
    });
}

TEST_CASE("property: points are recovered from their Bourdon metrics") {
    support::for_random_spaces(64, 40, 3, 14, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        const TreePoint x = random_tree_point(X, rng), y = random_tree_point(X, rng);
        CHECK(X.same_point(reconstruct_point(X, bourdon_metric(X, x)), x));
        if (!X.same_point(x, y)) {
            auto rx = bourdon_metric(X, x), ry = bourdon_metric(X, y);
            double diff = 0.0;
            for (PointId p : s.points())
                for (PointId q : s.points()) diff = std::max(diff, std::abs(rx.raw_dist(p, q) - ry.raw_dist(p, q)));
            CHECK(diff > 0.0);
        }
    });
}
