#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "support.hpp"
#include "ultratree/boundary.hpp"
#include "ultratree/errors.hpp"

using namespace ultratree;
using support::e;

namespace {

struct Ends {
    BoundaryPoint a, b, c, w;
};

Ends ends_E(const FillingTree& X) {
    const auto& s = X.base();
    return {iota(X, s.at("a")), iota(X, s.at("b")), iota(X, s.at("c")), iota(X, s.at("w"))};
}

double rho(const ExtendedMetricSpace& s, const char* x, const char* y) { return s.raw_dist(s.at(x), s.at(y)); }

}  // namespace

TEST_CASE("iota and its inverse") {
    auto X = support::tree_E();
    auto E = ends_E(X);
    CHECK(E.w.is_omega_end());
    CHECK(E.a.anchor() == X.base().at("a"));
    CHECK_THROWS_AS(E.w.anchor(), DomainError);
    for (PointId z : X.base().points()) CHECK(iota_inverse(X, iota(X, z)) == z);
}

TEST_CASE("boundary Gromov products on E") {
    auto X = support::tree_E();
    auto E = ends_E(X);
    const TreePoint o = X.point("a", 0);
    CHECK(gromov_product_boundary(X, E.a, E.b, o) == doctest::Approx(1.0));
    CHECK(gromov_product_boundary(X, E.a, E.w, o) == 0.0);
    CHECK(gromov_product_boundary(X, E.a, E.a, o) == std::numeric_limits<double>::infinity());
    CHECK(gromov_product_boundary(X, E.c, E.b, o) == 0.0);
    CHECK(gromov_product_mixed(X, E.b, X.point("a", 2), o) == doctest::Approx(1.0));
}

TEST_CASE("Busemann functions on E") {
    auto X = support::tree_E();
    auto E = ends_E(X);
    const TreePoint x = X.point("a", 0), y = X.point("a", 1);
    CHECK(busemann(X, E.a, x, y) == doctest::Approx(1.0));
    CHECK(busemann(X, E.w, x, y) == doctest::Approx(-1.0));
    CHECK(busemann(X, E.c, x, y) == doctest::Approx(-1.0));
    CHECK(busemann(X, E.b, x, x) == 0.0);
}

TEST_CASE("Bourdon metric and the metric with remote point on E") {
    auto X = support::tree_E();
    auto r = bourdon_metric(X, X.point("a", 0));
    CHECK_FALSE(r.has_remote_point());
    CHECK(rho(r, "a", "b") == doctest::Approx(1 / e));
    CHECK(rho(r, "a", "w") == doctest::Approx(1.0));
    CHECK(rho(r, "c", "b") == doctest::Approx(1.0));
    CHECK(classical_cross_ratio(r, r.at("w"), r.at("c"), r.at("b"), r.at("a")).value() == doctest::Approx(e));

    auto rw = boundary_metric_with_remote(X, X.point("a", 0));
    CHECK(rw.is_remote(rw.at("w")));
    CHECK(rho(rw, "a", "b") == doctest::Approx(1 / e));
    CHECK(rho(rw, "a", "w") == std::numeric_limits<double>::infinity());

    auto canon = canonical_boundary_space(X, X.point("a", 0));
    auto base = support::space_E();
    for (PointId p : base.points())
        for (PointId q : base.points()) CHECK(support::close(canon.raw_dist(p, q), base.raw_dist(p, q)));
}

TEST_CASE("ideal tripods and rays on E") {
    auto X = support::tree_E();
    auto E = ends_E(X);
    CHECK(X.same_point(ideal_tripod(X, E.a, E.b, E.c), X.point("a", 1)));
    CHECK(X.same_point(ideal_tripod(X, E.w, E.a, E.b), X.point("a", 1)));
    CHECK(X.same_point(ideal_tripod(X, E.w, E.a, E.c), X.point("a", 0)));
    CHECK_THROWS_AS(ideal_tripod(X, E.a, E.a, E.c), DomainError);
    CHECK(X.same_point(along_ray(X, X.point("a", 0), E.a, 2), X.point("a", 2)));
    CHECK(X.same_point(along_ray(X, X.point("a", 0), E.w, 1), X.point("c", -1)));
    CHECK(X.same_point(along_ray(X, X.point("a", 2), E.c, 3), X.point("c", 1)));
}

TEST_CASE("property: boundary quantities match probes in the explicit graph") {
    support::for_random_spaces(41, 25, 3, 12, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        std::vector<TreePoint> pts(4);
        std::vector<double> ts;
        for (auto& p : pts) {
            p = random_tree_point(X, rng);
            ts.push_back(p.t);
        }
        oracle::TreeGraph g(s, oracle::probe_ladder(X, ts));
        oracle::EndGeometry geo(X, g);
        for (const auto& x : pts) {
            for (PointId i : s.points()) {
                const BoundaryPoint a = iota(X, i);
                for (PointId j : s.points()) {
                    if (i == j) continue;
                    const BoundaryPoint b = iota(X, j);
                    CHECK(gromov_product_boundary(X, a, b, x) == doctest::Approx(geo.gromov(a, b, x)).epsilon(1e-12));
                }
                for (const auto& y : pts) CHECK(busemann(X, a, x, y) == doctest::Approx(geo.busemann(a, x, y)).epsilon(1e-12));
            }
        }
    });
}

TEST_CASE("property: Bourdon metrics are antipodal diameter-1 ultrametrics") {
    support::for_random_spaces(42, 30, 3, 20, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        const TreePoint x = random_tree_point(X, rng);
        auto r = bourdon_metric(X, x);
        CHECK(is_ultrametric_metric(r));
        double diam = 0.0;
        for (PointId p : r.points()) {
            double row = 0.0;
            for (PointId q : r.points()) row = std::max(row, r.raw_dist(p, q));
            CHECK(row == doctest::Approx(1.0));
            diam = std::max(diam, row);
        }
        CHECK(diam == doctest::Approx(1.0));
    });
}

TEST_CASE("property: changing the base point rescales by Busemann factors") {
    support::for_random_spaces(43, 30, 3, 16, [](const ExtendedMetricSpace& s, Rng& rng) {
        FillingTree X(s);
        const TreePoint x = random_tree_point(X, rng), y = random_tree_point(X, rng);
        auto rx = bourdon_metric(X, x), ry = bourdon_metric(X, y);
        auto lambda = [&](PointId p) { return std::exp(0.5 * busemann(X, iota(X, p), x, y)); };
        for (PointId p : s.points())
            for (PointId q : s.points()) {
                if (p == q) continue;
                CHECK(ry.raw_dist(p, q) == doctest::Approx(lambda(p) * lambda(q) * rx.raw_dist(p, q)).epsilon(1e-9));
            }
        // cocycle
        const TreePoint z = random_tree_point(X, rng);
        const BoundaryPoint a = random_boundary_point(X, rng);
        CHECK(busemann(X, a, x, z) == doctest::Approx(busemann(X, a, x, y) + busemann(X, a, y, z)).epsilon(1e-12));
    });
}
