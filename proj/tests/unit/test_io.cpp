#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "support.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/io.hpp"

using namespace ultratree;

namespace {

const std::string data_dir = ULTRATREE_TEST_DATA;

// Single-linkage distances through Kruskal with union-find.
std::vector<double> single_linkage(const ExtendedMetricSpace& s) {
    const std::size_t n = s.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(s.raw_dist(PointId{i}, PointId{j}), i, j);
    std::sort(edges.begin(), edges.end());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    std::vector<double> out(n * n, 0.0);
    for (auto [d, i, j] : edges) {
        std::size_t ri = root(i), rj = root(j);
        if (ri == rj) continue;
        for (auto p : members[ri])
            for (auto q : members[rj]) out[p * n + q] = out[q * n + p] = d;
        members[ri].insert(members[ri].end(), members[rj].begin(), members[rj].end());
        parent[rj] = ri;
    }
    return out;
}

}  // namespace

TEST_CASE("parsing the E document") {
    auto s = io::load_space(data_dir + "/E.json");
    CHECK(s.size() == 4);
    CHECK(s.is_remote(s.at("w")));
    CHECK(s.height(s.at("a"), s.at("b")) == doctest::Approx(1.0));
    CHECK(s.height(s.at("a"), s.at("c")) == 0.0);
    CHECK_FALSE(std::signbit(s.height(s.at("a"), s.at("c"))));
}

TEST_CASE("malformed and invalid documents") {
    CHECK_THROWS_AS(io::load_space(data_dir + "/asymmetric.json"), AxiomViolation);
    try {
        io::load_space(data_dir + "/asymmetric.json");
    } catch (const AxiomViolation& v) {
        CHECK(v.axiom() == "symmetry");
    }
    try {
        io::parse_space(R"({"format_version": 1, "points": ["a", "b"], "omega": null, "matrix": [1]})");
        FAIL("two points accepted");
    } catch (const AxiomViolation& v) {
        CHECK(v.axiom() == "cardinality");
    }
    CHECK_THROWS_AS(io::parse_space("{"), ParseError);
    CHECK_THROWS_AS(io::parse_space(R"({"format_version": 2, "points": ["a", "b", "c"], "matrix": [1, 1, 1]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_space(R"({"format_version": 1, "points": ["a", "b", "c"], "matrix": [1, 1]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_space(R"({"format_version": 1, "points": ["a", "b", "c"], "matrix": [1, "x", 1]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_space(R"({"format_version": 1, "points": ["a", "b", "c"], "matrix": [1, 5, 1]})"),
                    AxiomViolation);
}

TEST_CASE("heights encoding and full matrices") {
    auto s = io::parse_space(R"({"format_version": 1, "points": ["a", "b", "c", "w"], "omega": "w",
        "encoding": "heights", "matrix": [1, 0, "-inf", 0, "-inf", "-inf"]})");
    auto E = support::space_E();
    for (PointId p : E.points())
        for (PointId q : E.points()) CHECK(support::close(s.raw_dist(p, q), E.raw_dist(p, q)));
    auto full = io::parse_space(R"({"format_version": 1, "points": ["a", "b", "c"],
        "matrix": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]})");
    CHECK(full.raw_dist(full.at("a"), full.at("c")) == 2.0);
}

TEST_CASE("serialization round trip is lossless") {
    support::for_random_spaces(71, 20, 3, 20, [](const ExtendedMetricSpace& s, Rng&) {
        for (auto enc : {Encoding::distances, Encoding::heights}) {
            auto back = io::parse_space(io::serialize_space(s, enc));
            CHECK(back.labels() == s.labels());
            CHECK(back.omega() == s.omega());
            for (PointId p : s.points())
                for (PointId q : s.points()) {
                    if (enc == Encoding::distances) CHECK(back.raw_dist(p, q) == s.raw_dist(p, q));
                    else CHECK(back.height_row(p)[q.index] == s.height_row(p)[q.index]);
                }
        }
    });
}

TEST_CASE("tree points and map files") {
    auto X = support::tree_E();
    CHECK(io::parse_tree_point(X, "b:1.5") == X.point("b", 1.5));
    CHECK(io::parse_tree_point(X, R"({"anchor": "a", "t": -2})") == X.point("a", -2));
    CHECK_THROWS_AS(io::parse_tree_point(X, "b"), ParseError);
    CHECK_THROWS_AS(io::parse_tree_point(X, "w:0"), DomainError);
    auto j = io::tree_point_to_json(X, X.point("b", 2));
    CHECK(io::parse_tree_point(X, j.dump()) == X.point("b", 2));

    auto pts = io::parse_tree_points(X, io::read_file(data_dir + "/E_points.txt"));
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == X.point("a", 2));
    CHECK(pts[2] == X.point("c", -1));
    CHECK(io::parse_tree_points(X, R"([{"anchor": "a", "t": 0}, {"anchor": "b", "t": 3}])").size() == 2);

    auto pairs = io::parse_label_pairs("# swap\na b\nb a\n\nc c\nw w\n");
    CHECK(pairs.size() == 4);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"a", "b"});
    CHECK_THROWS_AS(io::parse_label_pairs("a\n"), ParseError);
}

TEST_CASE("subdominant ultrametric") {
    auto path = io::load_space(data_dir + "/path3.json");
    auto fit = io::fit_ultrametric(path);
    CHECK(fit.raw_dist(fit.at("a"), fit.at("c")) == 1.0);
    CHECK(fit.raw_dist(fit.at("a"), fit.at("b")) == 1.0);
    CHECK(is_ultrametric_metric(fit));
    CHECK_THROWS_AS(io::fit_ultrametric(support::space_E()), DomainError);
}

TEST_CASE("property: fit_ultrametric is single linkage, idempotent and below the input") {
    Rng rng(72);
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 25)(rng);
        std::vector<std::vector<double>> xy(n, std::vector<double>(2));
        for (auto& p : xy) p = {std::uniform_real_distribution<double>(0, 1)(rng), std::uniform_real_distribution<double>(0, 1)(rng)};
        std::vector<std::string> labels;
        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("p" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::hypot(xy[i][0] - xy[j][0], xy[i][1] - xy[j][1]);
        }
        auto s = support::finite_space(labels, m);
        auto fit = io::fit_ultrametric(s);
        const auto ref = single_linkage(s);
        CHECK(is_ultrametric_metric(fit));
        for (PointId p : s.points())
            for (PointId q : s.points()) {
                CHECK(fit.raw_dist(p, q) == ref[p.index * n + q.index]);
                CHECK(fit.raw_dist(p, q) <= s.raw_dist(p, q));
            }
        auto again = io::fit_ultrametric(fit);
        for (PointId p : s.points())
            for (PointId q : s.points()) CHECK(again.raw_dist(p, q) == fit.raw_dist(p, q));
    }
}

TEST_CASE("dendrogram export") {
    auto X = support::tree_E();
    CHECK(io::export_dendrogram(X, -1) == "((a:1,b:1):1,c:2):1;");
    auto back = io::parse_dendrogram(io::export_dendrogram(X, -1), -1);
    CHECK(back.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(back.heights[0 * 3 + 1] == doctest::Approx(1.0));
    CHECK(back.heights[0 * 3 + 2] == doctest::Approx(0.0));
    CHECK(back.heights[0] == std::numeric_limits<double>::infinity());
    // above the lowest merge the filling falls apart
    CHECK(io::export_dendrogram(X, 0.5).find('\n') != std::string::npos);
    CHECK_THROWS_AS(io::parse_dendrogram("(a:1,b:1);\n(c:1);", -1), ParseError);
}

TEST_CASE("property: dendrogram export round trips the heights") {
    support::for_random_spaces(73, 30, 3, 20, [](const ExtendedMetricSpace& s, Rng&) {
        FillingTree X(s);
        const double cut = -1.0 - X.max_abs_height();
        auto back = io::parse_dendrogram(io::export_dendrogram(X, cut), cut);
        const std::size_t n = back.labels.size();
        CHECK(n == X.anchors().size());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double h = X.height(s.at(back.labels[i]), s.at(back.labels[j]));
                CHECK(back.heights[i * n + j] == doctest::Approx(h).epsilon(1e-9).scale(1.0));
            }
    });
}
