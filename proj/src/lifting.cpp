#include "ultratree/lifting.hpp"

#include <algorithm>
#include <cmath>

#include "ultratree/errors.hpp"
#include "ultratree/generators.hpp"

namespace ultratree {

BoundaryMap::BoundaryMap(FillingTree source, FillingTree target, std::vector<PointId> assignment,
                         const SweepOptions& opts)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    PointMap m(source_.base(), target_.base(), assignment_);
    if (!is_moebius_map(m, opts)) throw ContractError("boundary map does not preserve cross ratio triples");
}

BoundaryMap::BoundaryMap(Trusted, FillingTree source, FillingTree target, std::vector<PointId> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {}

BoundaryMap BoundaryMap::identity(FillingTree source, FillingTree target, const SweepOptions& opts) {
    auto image = PointMap::identity(source.base(), target.base()).image();
    return BoundaryMap(std::move(source), std::move(target), std::move(image), opts);
}

BoundaryMap BoundaryMap::from_label_pairs(FillingTree source, FillingTree target,
                                          const std::vector<std::pair<std::string, std::string>>& pairs,
                                          const SweepOptions& opts) {
    auto image = PointMap::from_label_pairs(source.base(), target.base(), pairs).image();
    return BoundaryMap(std::move(source), std::move(target), std::move(image), opts);
}

BoundaryPoint BoundaryMap::operator()(const BoundaryPoint& a) const {
    return iota(target_, assignment_.at(iota_inverse(source_, a).index));
}

BoundaryMap BoundaryMap::after(const BoundaryMap& inner) const {
    if (inner.target_.id() != source_.id()) throw DomainError("boundary maps are not composable");
    std::vector<PointId> composed(inner.assignment_.size());
    for (std::size_t i = 0; i < composed.size(); ++i) composed[i] = assignment_[inner.assignment_[i].index];
    return BoundaryMap(Trusted{}, inner.source_, target_, std::move(composed));
}

std::optional<BoundaryMap> BoundaryMap::inverse() const {
    if (!is_surjective()) return std::nullopt;
    std::vector<PointId> inv(assignment_.size());
    for (std::size_t i = 0; i < assignment_.size(); ++i) inv[assignment_[i].index] = PointId{i};
    return BoundaryMap(Trusted{}, target_, source_, std::move(inv));
}

double signed_tripod_displacement(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                                  const BoundaryPoint& c1, const BoundaryPoint& c2) {
    if (a == b || a == c1 || b == c1 || a == c2 || b == c2)
        throw DomainError("signed tripod displacement needs a, b, c1 and a, b, c2 distinct");
    if (c1 == c2) return 0.0;
    // ln of rho_o(a,c2) rho_o(c1,b) / (rho_o(a,c1) rho_o(c2,b)) with Gromov products at a fixed o.
    const TreePoint o = tree.point(tree.anchors().front(), 0.0);
    auto gp = [&](const BoundaryPoint& p, const BoundaryPoint& q) { return gromov_product_boundary(tree, p, q, o); };
    return (gp(a, c1) + gp(c2, b)) - (gp(a, c2) + gp(c1, b));
}

bool on_line(const FillingTree& tree, const TreePoint& x, const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a == b) return false;
    return gromov_product_boundary(tree, a, b, x) <= tree.tolerance().log_slack(x.t, 0.0);
}

double line_coordinate(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                       const BoundaryPoint& c, const TreePoint& x) {
    if (!on_line(tree, x, a, b)) throw DomainError("point is not on the line between the given ends");
    const TreePoint u = ideal_tripod(tree, a, b, c);
    return busemann(tree, b, u, x);
}

TreePoint line_point(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                     const BoundaryPoint& c, double s) {
    const TreePoint u = ideal_tripod(tree, a, b, c);
    return s >= 0.0 ? along_ray(tree, u, b, s) : along_ray(tree, u, a, -s);
}

LineFrame default_frame(const FillingTree& tree, const TreePoint& x) {
    tree.check(x);
    for (PointId z : tree.anchors()) {
        if (z != x.anchor)
            return LineFrame{BoundaryPoint::omega_end(), BoundaryPoint::finite(x.anchor), BoundaryPoint::finite(z)};
    }
    throw DomainError("filling has fewer than two finite ends");
}

TreePoint lift(const BoundaryMap& f, const TreePoint& x) { return lift(f, x, default_frame(f.source(), x)); }

TreePoint lift(const BoundaryMap& f, const TreePoint& x, const LineFrame& frame) {
    const double s = line_coordinate(f.source(), frame.a, frame.b, frame.c, x);
    return line_point(f.target(), f(frame.a), f(frame.b), f(frame.c), s);
}

EmbeddingReport verify_isometric_embedding(const BoundaryMap& f,
                                           const std::vector<std::pair<TreePoint, TreePoint>>& sample) {
    const FillingTree& src = f.source();
    const FillingTree& dst = f.target();
    const Tolerance& tol = src.tolerance();
    EmbeddingReport r;
    r.pairs = sample.size();
    for (const auto& [x, y] : sample) {
        const double d = src.distance(x, y);
        const double d_img = dst.distance(lift(f, x), lift(f, y));
        r.max_relative_deviation = std::max(r.max_relative_deviation, std::abs(d_img - d) / std::max(1.0, d));
    }
    // Probes along [x, a) far beyond every branch point must map onto [F x, f(a)).
    for (const auto& pair : sample) {
        const TreePoint& x = pair.first;
        const TreePoint fx = lift(f, x);
        const double reach = 2.0 * src.max_abs_height() + std::abs(x.t) + 4.0;
        for (PointId z : src.base().points()) {
            const BoundaryPoint a = iota(src, z);
            const TreePoint probe = along_ray(src, x, a, reach);
            const double along = gromov_product_mixed(dst, f(a), lift(f, probe), fx);
            r.max_boundary_deviation = std::max(r.max_boundary_deviation, std::abs(along - reach) / reach);
        }
    }
    r.isometric = r.max_relative_deviation <= tol.rel;
    r.boundary_coherent = r.max_boundary_deviation <= tol.rel;
    return r;
}

RoundtripReport roundtrip_isometry(const ExtendedMetricSpace& space, std::size_t samples, std::uint64_t seed,
                                   const SweepOptions& opts) {
    RoundtripReport r;
    FillingTree tree(space, opts.tol);
    const TreePoint origin = tree.point(tree.anchors().front(), 0.0);
    ExtendedMetricSpace recovered = canonical_boundary_space(tree, origin);
    for (PointId a : space.finite_points()) {
        for (PointId b : space.finite_points()) {
            if (a == b) continue;
            const double want = space.raw_dist(a, b);
            const double got = recovered.raw_dist(recovered.at(space.label(a)), recovered.at(space.label(b)));
            r.boundary_deviation = std::max(r.boundary_deviation, std::abs(got - want) / want);
        }
    }

    FillingTree refilled(std::move(recovered), opts.tol);
    BoundaryMap f = BoundaryMap::identity(tree, refilled, opts);
    BoundaryMap back = *f.inverse();

    Rng rng(seed);
    std::vector<TreePoint> pts(std::max<std::size_t>(samples, 2));
    for (auto& p : pts) p = random_tree_point(tree, rng);
    std::vector<std::pair<TreePoint, TreePoint>> pairs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) pairs.emplace_back(pts[i], pts[i + 1]);
    r.samples = pts.size();
    r.embedding = verify_isometric_embedding(f, pairs);

    r.inverse_is_identity = std::all_of(pts.begin(), pts.end(), [&](const TreePoint& p) {
        return tree.same_point(lift(back, lift(f, p)), p);
    });
    r.passed = r.boundary_deviation <= opts.tol.rel && r.embedding.isometric && r.embedding.boundary_coherent &&
               r.inverse_is_identity;
    return r;
}

}  // namespace ultratree
