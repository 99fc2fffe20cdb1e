#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "ultratree/antipodal.hpp"
#include "ultratree/boundary.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/generators.hpp"
#include "ultratree/lifting.hpp"
#include "ultratree/moebius.hpp"

namespace ultratree::acceptance {
namespace {

using Clock = std::chrono::steady_clock;
using oracle::EndGeometry;
using oracle::TreeGraph;

constexpr double kStrict = 1e-9;
constexpr std::size_t kExhaustiveUpTo = 12;
constexpr std::size_t kQuadrupleSample = 10000;

Rng stream(std::uint64_t seed, int id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id)};
    return Rng(seq);
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

ExtendedMetricSpace random_space(Rng& rng, std::size_t n, std::optional<double> grid = std::nullopt,
                                 bool with_remote = true) {
    DendrogramOptions o;
    o.points = n;
    o.min_height = 0.0;
    o.max_height = 10.0;
    o.grid = grid;
    o.with_remote = with_remote;
    return random_dendrogram_space(rng, o);
}

SweepOptions sweep_for(std::size_t n, const Tolerance& tol, Rng& rng) {
    SweepOptions s;
    s.tol = tol;
    if (n > kExhaustiveUpTo) {
        s.sample = kQuadrupleSample;
        s.seed = rng();
    }
    return s;
}

double rel_dev(double got, double want) { return std::abs(got - want) / std::abs(want); }

BoundaryPoint end_of(const FillingTree& tree, std::size_t i) { return iota(tree, PointId{i}); }

BoundaryPoint random_end_except(const FillingTree& tree, Rng& rng, std::initializer_list<BoundaryPoint> avoid) {
    while (true) {
        BoundaryPoint e = end_of(tree, uniform_size(rng, 0, tree.base().size() - 1));
        if (std::find(avoid.begin(), avoid.end(), e) == avoid.end()) return e;
    }
}

std::vector<ExtendedMetricSpace> isometry_spaces(std::uint64_t seed) {
    Rng rng = stream(seed, 1);
    std::vector<ExtendedMetricSpace> out;
    for (int k = 0; k < 200; ++k) out.push_back(random_space(rng, uniform_size(rng, 3, 64)));
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

// Boundary of the filling, read at [u, 0] with omega sent back to infinity,
// reproduces the base metric.
CriterionResult filling_boundary_isometry(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{1, "filling-boundary isometry", false, 0.0, kStrict};
    double oracle_worst = 0.0;
    for (const auto& space : isometry_spaces(opts.seed)) {
        FillingTree tree(space, opts.tol);
        const TreePoint o = tree.point(tree.anchors().front(), 0.0);
        const ExtendedMetricSpace recovered = canonical_boundary_space(tree, o);

        TreeGraph graph(space, oracle::probe_ladder(tree, {0.0}));
        EndGeometry ends(tree, graph);
        const BoundaryPoint w = BoundaryPoint::omega_end();
        for (PointId a : space.finite_points()) {
            for (PointId b : space.finite_points()) {
                if (a >= b) continue;
                const double want = space.raw_dist(a, b);
                r.measured = std::max(r.measured, rel_dev(recovered.raw_dist(a, b), want));
                const BoundaryPoint ea = iota(tree, a), eb = iota(tree, b);
                const double g = ends.gromov(ea, eb, o) - ends.gromov(ea, w, o) - ends.gromov(eb, w, o);
                oracle_worst = std::max(oracle_worst, rel_dev(std::exp(-g), want));
            }
        }
        ++r.cases;
    }
    r.seconds = timer.seconds();
    r.passed = r.measured <= kStrict && oracle_worst <= kStrict && r.seconds <= 30.0;
    r.detail = "graph oracle " + fmt(oracle_worst) + ", limit 30 s";
    return r;
}

struct MoebiusSweep {
    CriterionResult equivalence{2, "canonical Moebius structure", false, 0.0, kStrict};
    CriterionResult ultrametric{3, "boundary crt ultrametric", false, 0.0, 0.0};
};

bool raw_crt_ultrametric(const ExtendedMetricSpace& s, const Quadruple& q, double rel) {
    auto d = [&](std::size_t i, std::size_t j) { return s.raw_dist(q[i], q[j]); };
    double p[3] = {d(0, 1) * d(2, 3), d(0, 2) * d(1, 3), d(0, 3) * d(1, 2)};
    std::sort(p, p + 3);
    return p[2] - p[1] <= rel * p[2];
}

MoebiusSweep moebius_sweep(const SuiteOptions& opts) {
    Timer timer;
    MoebiusSweep out;
    Rng rng = stream(opts.seed, 2);
    double rescale_worst = 0.0, bourdon_worst = 0.0;
    std::size_t quadruples = 0, non_ultrametric = 0, oracle_non_ultrametric = 0;
    bool all_equivalent = true;
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = uniform_size(rng, 3, 24);
        FillingTree tree(random_space(rng, n), opts.tol);
        for (int pair = 0; pair < 5; ++pair) {
            const TreePoint x = random_tree_point(tree, rng);
            const TreePoint y = random_tree_point(tree, rng);
            const ExtendedMetricSpace rx = bourdon_metric(tree, x);
            const ExtendedMetricSpace ry = bourdon_metric(tree, y);
            const SweepOptions sweep = sweep_for(n, opts.tol, rng);

            const MoebiusReport rep = check_moebius(PointMap::identity(rx, ry), sweep);
            all_equivalent = all_equivalent && rep.preserves_crt;
            out.equivalence.measured = std::max(out.equivalence.measured, rep.max_deviation);
            ++out.equivalence.cases;

            TreeGraph graph(tree.base(), oracle::probe_ladder(tree, {x.t, y.t}));
            EndGeometry ends(tree, graph);
            const auto oracle_rx = ends.bourdon(x);
            std::vector<double> lambda(n);
            for (std::size_t i = 0; i < n; ++i) lambda[i] = std::exp(0.5 * ends.busemann(end_of(tree, i), x, y));
            const ExtendedMetricSpace scaled = rescale(rx, lambda);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const PointId a{i}, b{j};
                    rescale_worst = std::max(rescale_worst, rel_dev(scaled.raw_dist(a, b), ry.raw_dist(a, b)));
                    bourdon_worst = std::max(bourdon_worst, rel_dev(rx.raw_dist(a, b), oracle_rx[i * n + j]));
                }
            }

            for_each_admissible_quadruple(n, sweep, [&](const Quadruple& q) {
                for (const ExtendedMetricSpace* s : {&rx, &ry}) {
                    if (!is_ultrametric_point(crt(*s, q[0], q[1], q[2], q[3]), opts.tol)) ++non_ultrametric;
                    if (!raw_crt_ultrametric(*s, q, kStrict)) ++oracle_non_ultrametric;
                }
                ++quadruples;
                return true;
            });
        }
    }
    const double seconds = timer.seconds();
    auto& eq = out.equivalence;
    eq.measured = std::max({eq.measured, rescale_worst});
    eq.passed = all_equivalent && eq.measured <= kStrict && bourdon_worst <= kStrict;
    eq.seconds = seconds;
    eq.detail = "crt and lambda-rescaling; Bourdon vs graph oracle " + fmt(bourdon_worst);

    auto& um = out.ultrametric;
    um.cases = quadruples;
    um.measured = static_cast<double>(non_ultrametric);
    um.passed = non_ultrametric == 0 && oracle_non_ultrametric == 0;
    um.seconds = seconds;
    um.detail = "non-ultrametric quadruples; brute-force count " + std::to_string(oracle_non_ultrametric);
    return out;
}

CriterionResult antipodal_isometry(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{4, "antipodal space isometry", false, 0.0, kStrict};
    Rng rng = stream(opts.seed, 4);
    double derivative_worst = 0.0, library_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = uniform_size(rng, 3, 16);
        FillingTree tree(random_space(rng, n), opts.tol);
        for (int pair = 0; pair < 10; ++pair) {
            const TreePoint x = random_tree_point(tree, rng);
            const TreePoint y = random_tree_point(tree, rng);
            const ExtendedMetricSpace rx = bourdon_metric(tree, x);
            const ExtendedMetricSpace ry = bourdon_metric(tree, y);
            TreeGraph graph(tree.base(), oracle::probe_ladder(tree, {x.t, y.t}));
            EndGeometry ends(tree, graph);
            const double d = graph.distance(graph.node(x), graph.node(y));

            const Membership m = pair == 0 ? Membership::check : Membership::trust;
            const SweepOptions sweep = sweep_for(n, opts.tol, rng);
            r.measured = std::max(r.measured, std::abs(dist_ma1(rx, ry, sweep, m) - d));
            library_worst = std::max(library_worst, std::abs(tree.distance(x, y) - d));
            for (std::size_t z = 0; z < n; ++z) {
                const double b = ends.busemann(end_of(tree, z), x, y);
                const double ln_deriv = std::log(metric_derivative(ry, rx, PointId{z}, sweep, Membership::trust));
                derivative_worst = std::max(derivative_worst, std::abs(ln_deriv - b));
                library_worst = std::max(library_worst, std::abs(busemann(tree, end_of(tree, z), x, y) - b));
            }
            ++r.cases;
        }
    }
    r.measured = std::max(r.measured, derivative_worst);
    r.seconds = timer.seconds();
    r.passed = r.measured <= kStrict && library_worst <= kStrict;
    r.detail = "dist_ma1 and ln derivative vs graph oracle; library distance/Busemann " + fmt(library_worst);
    return r;
}

CriterionResult tripod_displacement(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{5, "signed tripod displacement", false, 0.0, kStrict};
    Rng rng = stream(opts.seed, 5);
    std::size_t degenerate = 0;
    while (r.cases < 500) {
        const std::size_t n = uniform_size(rng, 4, 16);
        FillingTree tree(random_space(rng, n), opts.tol);
        TreeGraph graph(tree.base(), oracle::probe_ladder(tree, {}));
        EndGeometry ends(tree, graph);
        for (int q = 0; q < 10; ++q, ++r.cases) {
            const BoundaryPoint a = random_end_except(tree, rng, {});
            const BoundaryPoint b = random_end_except(tree, rng, {a});
            const BoundaryPoint c1 = random_end_except(tree, rng, {a, b});
            const BoundaryPoint c2 = q % 5 == 0 ? c1 : random_end_except(tree, rng, {a, b});
            const double got = signed_tripod_displacement(tree, a, b, c1, c2);

            const auto u1 = ends.ideal_tripod(a, b, c1);
            const auto u2 = ends.ideal_tripod(a, b, c2);
            const auto from_u1 = graph.distances_from(u1);
            const auto from_u2 = graph.distances_from(u2);
            const auto pb = graph.probe(b);
            const double gap = from_u1[u2];
            // Positive when u2 lies on the ray from u1 toward b.
            const bool toward_b = std::abs(gap + from_u2[pb] - from_u1[pb]) <= kStrict * std::max(1.0, from_u1[pb]);
            const double want = toward_b ? gap : -gap;
            if (gap == 0.0) ++degenerate;
            r.measured = std::max(r.measured, std::abs(got - want));
        }
    }
    r.seconds = timer.seconds();
    r.passed = r.measured <= kStrict && degenerate > 0;
    r.detail = std::to_string(degenerate) + " zero-displacement cases";
    return r;
}

// Swap of the two points merging highest: they see every other point alike.
std::vector<PointId> cherry_swap(const FillingTree& tree) {
    const auto anchors = tree.anchors();
    std::pair<PointId, PointId> best{anchors[0], anchors[1]};
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j)
            if (tree.height(anchors[i], anchors[j]) > tree.height(best.first, best.second))
                best = {anchors[i], anchors[j]};
    std::vector<PointId> perm(tree.base().size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = PointId{i};
    std::swap(perm[best.first.index], perm[best.second.index]);
    return perm;
}

CriterionResult lifting(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{6, "lifting of Moebius maps", false, 0.0, kStrict};
    Rng rng = stream(opts.seed, 6);
    double oracle_worst = 0.0;
    std::size_t frame_mismatch = 0, frames = 0, identity_failures = 0;
    bool coherent = true;
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = uniform_size(rng, 4, 14);
        FillingTree tree(random_space(rng, n), opts.tol);
        SweepOptions sweep;
        sweep.tol = opts.tol;

        auto cross = [&] {
            const ExtendedMetricSpace rx = bourdon_metric(tree, random_tree_point(tree, rng));
            FillingTree other(send_to_infinity(rx, PointId{uniform_size(rng, 0, n - 1)}), opts.tol);
            return BoundaryMap::identity(tree, other, sweep);
        };
        std::optional<BoundaryMap> f;
        switch (k % 3) {
            case 0: f = cross(); break;
            case 1: f = BoundaryMap(tree, tree, cherry_swap(tree), sweep); break;
            default: f = cross().after(BoundaryMap(tree, tree, cherry_swap(tree), sweep)); break;
        }

        std::vector<TreePoint> xs, images;
        std::vector<std::pair<TreePoint, TreePoint>> pairs;
        for (int i = 0; i < 100; ++i) {
            pairs.emplace_back(random_tree_point(tree, rng), random_tree_point(tree, rng));
            xs.push_back(pairs.back().first);
            xs.push_back(pairs.back().second);
        }
        const EmbeddingReport rep = verify_isometric_embedding(*f, pairs);
        r.measured = std::max(r.measured, rep.max_relative_deviation);
        coherent = coherent && rep.boundary_coherent;

        std::vector<double> src_t, dst_t;
        for (const auto& x : xs) {
            images.push_back(lift(*f, x));
            src_t.push_back(x.t);
            dst_t.push_back(images.back().t);
        }
        TreeGraph src(tree.base(), oracle::probe_ladder(tree, src_t));
        TreeGraph dst(f->target().base(), oracle::probe_ladder(f->target(), dst_t));
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
            const double d = src.distance(src.node(xs[i]), src.node(xs[i + 1]));
            const double d_img = dst.distance(dst.node(images[i]), dst.node(images[i + 1]));
            oracle_worst = std::max(oracle_worst, std::abs(d_img - d) / std::max(1.0, d));
        }

        for (std::size_t i = 0; i < 5; ++i) {
            const TreePoint& x = xs[i];
            for (int c = 0; c < 20; ++c, ++frames) {
                LineFrame frame = default_frame(tree, x);
                for (int attempt = 0; attempt < 200; ++attempt) {
                    const BoundaryPoint a = random_end_except(tree, rng, {});
                    const BoundaryPoint b = random_end_except(tree, rng, {a});
                    if (on_line(tree, x, a, b)) {
                        frame = LineFrame{a, b, random_end_except(tree, rng, {a, b})};
                        break;
                    }
                }
                if (!f->target().same_point(lift(*f, x, frame), images[i])) ++frame_mismatch;
            }
        }

        const BoundaryMap id = BoundaryMap::identity(tree, tree, sweep);
        for (const auto& x : xs)
            if (!tree.same_point(lift(id, x), x)) ++identity_failures;
        ++r.cases;
    }
    r.measured = std::max(r.measured, oracle_worst);
    r.seconds = timer.seconds();
    r.passed = r.measured <= kStrict && coherent && frame_mismatch == 0 && identity_failures == 0;
    r.detail = std::to_string(frame_mismatch) + "/" + std::to_string(frames) + " frame mismatches, " +
               std::to_string(identity_failures) + " identity failures, boundary " +
               (coherent ? "coherent" : "INCOHERENT");
    return r;
}

CriterionResult roundtrip(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{7, "fill/boundary round trip", false, 0.0, kStrict};
    std::size_t passed = 0;
    SweepOptions sweep;
    sweep.tol = opts.tol;
    std::uint64_t k = 0;
    for (const auto& space : isometry_spaces(opts.seed)) {
        sweep.sample = space.size() > kExhaustiveUpTo ? std::optional<std::size_t>(kQuadrupleSample) : std::nullopt;
        sweep.seed = opts.seed + k;
        const RoundtripReport rep = roundtrip_isometry(space, 32, opts.seed + k++, sweep);
        r.measured = std::max({r.measured, rep.boundary_deviation, rep.embedding.max_relative_deviation});
        if (rep.passed) ++passed;
        ++r.cases;
    }
    r.seconds = timer.seconds();
    r.passed = passed == r.cases;
    r.detail = std::to_string(passed) + "/" + std::to_string(r.cases) + " spaces";
    return r;
}

CriterionResult surjectivity(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{8, "Bourdon metric reconstruction", false, 0.0, opts.tol.rel};
    Rng rng = stream(opts.seed, 8);
    std::size_t failures = 0;
    double oracle_worst = 0.0;
    while (r.cases < 500) {
        const std::size_t n = uniform_size(rng, 3, 12);
        FillingTree tree(random_space(rng, n), opts.tol);
        for (int i = 0; i < 10; ++i, ++r.cases) {
            const TreePoint x = random_tree_point(tree, rng);
            const TreePoint back = reconstruct_point(tree, bourdon_metric(tree, x));
            if (!tree.same_point(back, x)) ++failures;
            TreeGraph graph(tree.base(), oracle::probe_ladder(tree, {x.t, back.t}));
            oracle_worst = std::max(oracle_worst, graph.distance(graph.node(x), graph.node(back)));
        }
    }
    r.measured = oracle_worst;
    r.seconds = timer.seconds();
    r.passed = failures == 0;
    r.detail = std::to_string(failures) + " same_point failures; measured is the graph distance to the original";
    return r;
}

CriterionResult distance_oracle(const SuiteOptions& opts) {
    Timer timer;
    constexpr double step = 1.0 / 64.0;
    CriterionResult r{9, "distance vs discretized tree", false, 0.0, 2.0 * step};
    Rng rng = stream(opts.seed, 9);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = uniform_size(rng, 3, 8);
        FillingTree tree(random_space(rng, n, 0.25), opts.tol);
        std::vector<TreePoint> pts;
        for (int i = 0; i < 12; ++i) pts.push_back(random_tree_point(tree, rng));
        double lo = 0.0, hi = 0.0;
        for (const auto& p : pts) {
            lo = std::min(lo, p.t);
            hi = std::max(hi, p.t);
        }
        lo = std::min(lo, -tree.max_abs_height()) - 1.0;
        hi = std::max(hi, tree.max_abs_height()) + 1.0;
        std::vector<double> grid;
        for (auto i = static_cast<long>(std::floor(lo / step)); i <= static_cast<long>(std::ceil(hi / step)); ++i)
            grid.push_back(static_cast<double>(i) * step);
        TreeGraph net(tree.base(), grid, true);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto hops = net.hops_from(net.nearest(pts[i].anchor, pts[i].t));
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const double bfs = static_cast<double>(hops[net.nearest(pts[j].anchor, pts[j].t)]) * step;
                r.measured = std::max(r.measured, std::abs(tree.distance(pts[i], pts[j]) - bfs));
                ++r.cases;
            }
        }
    }
    r.seconds = timer.seconds();
    r.passed = r.measured <= r.threshold && r.seconds <= 20.0;
    r.detail = "BFS on the 2^-6 net, limit 20 s";
    return r;
}

CriterionResult validator_sensitivity(const SuiteOptions& opts) {
    Timer timer;
    CriterionResult r{10, "ultrametric validator sensitivity", false, 0.0, 0.0};
    Rng rng = stream(opts.seed, 10);
    std::size_t missed = 0, oracle_disagrees = 0, rejected_clean = 0;
    for (; r.cases < 100; ++r.cases) {
        const std::size_t n = uniform_size(rng, 4, 16);
        const ExtendedMetricSpace clean = random_space(rng, n, std::nullopt, r.cases % 2 == 0);
        SweepOptions sweep = sweep_for(n, opts.tol, rng);
        if (!is_ultrametric_metric(clean, opts.tol) || !is_ultrametric_moebius(clean, sweep)) ++rejected_clean;

        // Entries that are a largest side of some triangle; raising one breaks
        // the isosceles condition there.
        const auto pts = clean.finite_points();
        std::vector<std::pair<PointId, PointId>> candidates;
        for (PointId x : pts) {
            for (PointId y : pts) {
                if (x >= y) continue;
                const double dxy = clean.raw_dist(x, y);
                for (PointId z : pts) {
                    if (z == x || z == y) continue;
                    if (dxy >= clean.raw_dist(x, z) && dxy >= clean.raw_dist(y, z)) {
                        candidates.emplace_back(x, y);
                        break;
                    }
                }
            }
        }
        const auto [x, y] = candidates[uniform_size(rng, 0, candidates.size() - 1)];
        const double factor = uniform_real(rng, 1.01, 1.5);
        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i * n + j] = clean.raw_dist(PointId{i}, PointId{j});
        m[x.index * n + y.index] *= factor;
        m[y.index * n + x.index] *= factor;
        std::optional<std::size_t> omega;
        if (clean.omega()) omega = clean.omega()->index;
        const ExtendedMetricSpace bad =
            ExtendedMetricSpace::from_distances(clean.labels(), omega, std::move(m), TriangleCheck::record);

        const bool flagged = !is_ultrametric_metric(bad, opts.tol) || !is_ultrametric_moebius(bad, sweep);
        if (!flagged) ++missed;
        if (oracle::brute_force_ultrametric(bad, kStrict)) ++oracle_disagrees;
    }
    r.measured = static_cast<double>(missed);
    r.seconds = timer.seconds();
    r.passed = missed == 0 && oracle_disagrees == 0 && rejected_clean == 0;
    r.detail = "false accepts; " + std::to_string(rejected_clean) + " clean inputs rejected, brute force accepted " +
               std::to_string(oracle_disagrees);
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
    switch (id) {
        case 1: return filling_boundary_isometry(opts);
        case 2: return moebius_sweep(opts).equivalence;
        case 3: return moebius_sweep(opts).ultrametric;
        case 4: return antipodal_isometry(opts);
        case 5: return tripod_displacement(opts);
        case 6: return lifting(opts);
        case 7: return roundtrip(opts);
        case 8: return surjectivity(opts);
        case 9: return distance_oracle(opts);
        case 10: return validator_sensitivity(opts);
        default: throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    }
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (id == 2) {
            MoebiusSweep both = moebius_sweep(opts);
            out.push_back(both.equivalence);
            out.push_back(both.ultrametric);
            ++id;
            continue;
        }
        try {
            out.push_back(run_criterion(id, opts));
        } catch (const std::exception& e) {
            CriterionResult r;
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.detail = std::string("threw: ") + e.what();
            out.push_back(r);
        }
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << ": "
      << fmt(r.measured) << " <= " << fmt(r.threshold) << " (" << r.cases << " cases, " << fmt(r.seconds) << " s)";
    if (!r.detail.empty()) s << " " << r.detail;
    return s.str();
}

nlohmann::json to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opts) {
    nlohmann::json doc;
    doc["seed"] = opts.seed;
    doc["passed"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    auto& arr = doc["criteria"] = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"cases", r.cases},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
    }
    return doc;
}

}  // namespace ultratree::acceptance
