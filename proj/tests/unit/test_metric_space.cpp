#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "support.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/metric_space.hpp"

using namespace ultratree;
using support::e;

namespace {

const double inf = std::numeric_limits<double>::infinity();

std::string axiom_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const AxiomViolation& v) {
        return v.axiom();
    }
    return "none";
}

// Independent check straight from the definition on raw distances.
bool isosceles_everywhere(const ExtendedMetricSpace& s) {
    auto pts = s.finite_points();
    for (PointId x : pts)
        for (PointId y : pts)
            for (PointId z : pts) {
                if (x == y || y == z || x == z) continue;
                if (s.raw_dist(x, y) > std::max(s.raw_dist(x, z), s.raw_dist(z, y)) * (1 + 1e-9)) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("space E heights") {
    auto E = support::space_E();
    const PointId a{0}, b{1}, c{2}, w{3};
    CHECK(E.height(a, b) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(E.height(a, c) == 0.0);
    CHECK_FALSE(std::signbit(E.height(a, c)));
    CHECK(E.height(a, a) == inf);
    CHECK_THROWS_AS(E.height(a, w), DomainError);
    CHECK(E.dist(a, w) == ExtReal::infinity());
    CHECK(E.dist(w, w) == ExtReal(0.0));
    CHECK(E.finite_points().size() == 3);
    CHECK(E.at("c") == c);
    CHECK_THROWS_AS(E.at("zz"), DomainError);
}

TEST_CASE("construction names the violated axiom") {
    CHECK(axiom_of([] { support::finite_space({"a", "b"}, {0, 1, 1, 0}); }) == "cardinality");
    CHECK(axiom_of([] { support::finite_space({"a", "b", "c"}, {0, 1, 1, 1.5, 0, 1, 1, 1, 0}); }) == "symmetry");
    CHECK(axiom_of([] { support::finite_space({"a", "b", "c"}, {0.1, 1, 1, 1, 0, 1, 1, 1, 0}); }) == "diagonal");
    CHECK(axiom_of([] { support::finite_space({"a", "b", "c"}, {0, 0, 1, 0, 0, 1, 1, 1, 0}); }) == "positivity");
    CHECK(axiom_of([] { support::finite_space({"a", "b", "c"}, {0, 1, 3, 1, 0, 1, 3, 1, 0}); }) == "triangle");
    CHECK(axiom_of([] { support::finite_space({"a", "a", "c"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}); }) == "labels");
    CHECK(axiom_of([] { support::finite_space({"a", "b", "c"}, {0, inf, 1, inf, 0, 1, 1, 1, 0}); }) ==
          "remote-point");
    CHECK(axiom_of([] {
              ExtendedMetricSpace::from_distances({"a", "b", "w"}, 2, {0, 1, 5, 1, 0, inf, 5, inf, 0});
          }) == "remote-point");
    CHECK(axiom_of([] {
              ExtendedMetricSpace::from_heights({"a", "b", "w"}, 2, {inf, 1, -inf, 1, 0, -inf, -inf, -inf, inf});
          }) == "diagonal");
}

TEST_CASE("triangle violations can be recorded instead of raised") {
    auto s = ExtendedMetricSpace::from_distances({"a", "b", "c"}, std::nullopt, {0, 1, 3, 1, 0, 1, 3, 1, 0},
                                                 TriangleCheck::record);
    CHECK_FALSE(s.satisfies_triangle());
    CHECK(support::space_E().satisfies_triangle());
}

TEST_CASE("heights and distances encodings agree") {
    auto E = support::space_E();
    std::vector<double> h(16);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) h[i * 4 + j] = E.height_row(PointId{i})[j];
    auto H = ExtendedMetricSpace::from_heights(E.labels(), 3, h);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(support::close(H.raw_dist(PointId{i}, PointId{j}), E.raw_dist(PointId{i}, PointId{j})));
    CHECK(H.given_encoding() == Encoding::heights);
}

TEST_CASE("admissible quadruples") {
    auto E = support::space_E();
    const PointId a{0}, b{1}, c{2}, w{3};
    CHECK(is_admissible(E, a, b, c, w));
    CHECK_FALSE(is_admissible(E, a, a, a, b));
    CHECK(is_admissible(E, a, b, a, b));
    CHECK_THROWS_AS(crt(E, a, a, a, b), DomainError);
    CHECK_THROWS_AS(is_admissible(E, a, b, c, PointId{9}), DomainError);
}

TEST_CASE("cross ratio triples with the remote point conventions") {
    auto E = support::space_E();
    const PointId a{0}, b{1}, c{2}, w{3};
    const auto twice = crt(E, a, b, w, w);
    CHECK(twice.entries() == std::array<double, 3>{0.0, 0.5, 0.5});
    const auto repeated = crt(E, a, b, a, b);
    CHECK(repeated.entries() == std::array<double, 3>{0.5, 0.0, 0.5});

    // (1/e : 1 : 1) normalized by hand.
    const auto once = crt(E, a, b, c, w);
    const double s = 1 / e + 2;
    CHECK(once.a() == doctest::Approx(1 / e / s).epsilon(1e-14));
    CHECK(once.b() == doctest::Approx(1 / s).epsilon(1e-14));
    CHECK(once.c() == doctest::Approx(1 / s).epsilon(1e-14));
}

TEST_CASE("classical cross ratio") {
    auto E = support::space_E();
    const PointId a{0}, b{1}, c{2}, w{3};
    CHECK(classical_cross_ratio(E, a, b, a, b) == ExtReal(0.0));
    // rho(a,c) rho(b,w) / (rho(a,b) rho(c,w)): the infinities cancel.
    CHECK(classical_cross_ratio(E, a, b, c, w).value() == doctest::Approx(e));
    // rho(a,w) rho(b,w) / (rho(a,b) rho(w,w)) is inf / 0.
    CHECK(classical_cross_ratio(E, a, b, w, w) == ExtReal::infinity());
    // rho(a,a) rho(w,b) in the numerator is 0 * inf.
    CHECK_THROWS_AS(classical_cross_ratio(E, a, w, a, b), NumericDomainError);
}

TEST_CASE("projective triples") {
    CHECK(is_ultrametric_point(ProjectiveTriple::from_raw(0, 0.5, 0.5)));
    CHECK(is_ultrametric_point(ProjectiveTriple::from_raw(1, 1, 1)));
    CHECK_FALSE(is_ultrametric_point(ProjectiveTriple::from_raw(0.5, 0.3, 0.2)));
    CHECK(ProjectiveTriple::from_raw(2, 4, 2).entries() == std::array<double, 3>{0.25, 0.5, 0.25});
    CHECK(ProjectiveTriple::from_raw(inf, 3, inf).entries() == std::array<double, 3>{0.5, 0.0, 0.5});
    CHECK_THROWS_AS(ProjectiveTriple::from_raw(0, 0, 0), DomainError);
    CHECK_THROWS_AS(ProjectiveTriple::from_raw(-1, 1, 1), DomainError);

    support::for_random_spaces(11, 30, 4, 10, [](const ExtendedMetricSpace&, Rng& rng) {
        std::uniform_real_distribution<double> u(0.0, 5.0);
        const auto t = ProjectiveTriple::from_raw(u(rng), u(rng), u(rng) + 0.1);
        const auto again = ProjectiveTriple::from_raw(t.a(), t.b(), t.c());
        CHECK(again == t);  // bit-identical
        CHECK(t.a() + t.b() + t.c() == doctest::Approx(1.0));
    });
}

TEST_CASE("ultrametric metric check") {
    CHECK(is_ultrametric_metric(support::space_E()));
    auto perturbed = ExtendedMetricSpace::from_distances({"a", "b", "c", "w"}, 3,
                                                          {0, 1 / e, 0.9, inf, 1 / e, 0, 1, inf, 0.9, 1, 0, inf,
                                                           inf, inf, inf, 0});
    CHECK_FALSE(is_ultrametric_metric(perturbed));
    // Two finite points: nothing to check.
    auto small = ExtendedMetricSpace::from_distances({"a", "b", "w"}, 2, {0, 1, inf, 1, 0, inf, inf, inf, 0});
    CHECK(is_ultrametric_metric(small));
}

TEST_CASE("property: crt symmetries and finiteness") {
    support::for_random_spaces(3, 20, 4, 9, [](const ExtendedMetricSpace& s, Rng& rng) {
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        for (int k = 0; k < 40; ++k) {
            PointId x{pick(rng)}, y{pick(rng)}, z{pick(rng)}, w{pick(rng)};
            if (!is_admissible(s, x, y, z, w)) {
                CHECK_THROWS_AS(crt(s, x, y, z, w), DomainError);
                continue;
            }
            const auto t = crt(s, x, y, z, w);
            CHECK(t.linf_distance(crt(s, y, x, w, z)) <= 1e-15);
            CHECK(t.linf_distance(crt(s, z, w, x, y)) <= 1e-15);
            if (!s.is_remote(x) && !s.is_remote(y) && !s.is_remote(z) && !s.is_remote(w)) {
                for (double v : t.entries()) CHECK(std::isfinite(v));
                CHECK(*std::max_element(t.entries().begin(), t.entries().end()) > 0.0);
            }
        }
    });
}

TEST_CASE("property: log-domain check agrees with the isosceles definition") {
    support::for_random_spaces(5, 40, 4, 12, [](const ExtendedMetricSpace& s, Rng& rng) {
        CHECK(is_ultrametric_metric(s));
        CHECK(isosceles_everywhere(s));
        // Perturb a random finite entry either way and compare both checks.
        auto pts = s.finite_points();
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        PointId x = pts[pick(rng)], y = pts[pick(rng)];
        if (x == y) return;
        const std::size_t n = s.size();
        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i * n + j] = s.raw_dist(PointId{i}, PointId{j});
        const double f = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
        m[x.index * n + y.index] *= f;
        m[y.index * n + x.index] *= f;
        std::optional<std::size_t> omega;
        if (s.omega()) omega = s.omega()->index;
        auto t = ExtendedMetricSpace::from_distances(s.labels(), omega, m, TriangleCheck::record);
        CHECK(is_ultrametric_metric(t) == isosceles_everywhere(t));
    });
}
