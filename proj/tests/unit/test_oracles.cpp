// The reference graph is only useful if it is right on hand-checked cases.
#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace ultratree;

TEST_CASE("tree graph of E") {
    auto X = support::tree_E();
    const auto& s = X.base();
    oracle::TreeGraph g(s, {-1.0, 2.0});
    // levels -1, 0, 1, 2: a chain below 0, a fork at 0 toward c, a fork at 1 between a and b
    CHECK(g.size() == 1 + 1 + 2 + 3);
    CHECK(g.node(s.at("a"), 0) == g.node(s.at("c"), 0));
    CHECK(g.node(s.at("a"), 1) == g.node(s.at("b"), 1));
    CHECK(g.node(s.at("a"), 2) != g.node(s.at("b"), 2));
    CHECK(g.distance(g.node(s.at("a"), 2), g.node(s.at("b"), 2)) == 2.0);
    CHECK(g.distance(g.node(s.at("a"), 2), g.node(s.at("c"), 0)) == 2.0);
    CHECK(g.distance(g.node(s.at("c"), 2), g.node(s.at("b"), 2)) == 4.0);
    CHECK(g.median(g.node(s.at("a"), 2), g.node(s.at("b"), 2), g.node(s.at("c"), 2)) == g.node(s.at("a"), 1));
    CHECK(g.nearest(s.at("b"), 1.4) == g.node(s.at("b"), 1));
    CHECK(g.hops_from(g.node(s.at("c"), -1))[g.node(s.at("b"), 2)] == 3);
    CHECK_THROWS(g.node(s.at("a"), 0.5));
}

TEST_CASE("probe geometry of E") {
    auto X = support::tree_E();
    const auto& s = X.base();
    oracle::TreeGraph g(s, oracle::probe_ladder(X, {0.0}));
    oracle::EndGeometry geo(X, g);
    const TreePoint o = X.point("a", 0);
    const BoundaryPoint a = iota(X, s.at("a")), b = iota(X, s.at("b")), w = BoundaryPoint::omega_end();
    CHECK(geo.gromov(a, b, o) == 1.0);
    CHECK(geo.gromov(a, w, o) == 0.0);
    auto r = geo.bourdon(o);
    CHECK(r[0 * 4 + 1] == doctest::Approx(1 / support::e));
    CHECK(r[0 * 4 + 3] == 1.0);
}

TEST_CASE("brute-force ultrametric check") {
    CHECK(oracle::brute_force_ultrametric(support::space_E(), 1e-9));
    auto bad = support::finite_space({"a", "b", "c"}, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0});
    CHECK_FALSE(oracle::brute_force_ultrametric(bad, 1e-9));
}
