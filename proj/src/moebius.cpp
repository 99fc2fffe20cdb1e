#include "ultratree/moebius.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ultratree/errors.hpp"

namespace ultratree {
namespace {

bool admissible_indices(const Quadruple& q) {
    for (PointId p : q) {
        int c = 0;
        for (PointId r : q) c += (r == p);
        if (c >= 3) return false;
    }
    return true;
}

std::size_t admissible_count(std::size_t n) {
    // n^4 minus the quadruples with one entry three or four times.
    return n * n * n * n - n - 4 * n * (n - 1);
}

}  // namespace

std::size_t for_each_admissible_quadruple(std::size_t n, const SweepOptions& opts,
                                          const std::function<bool(const Quadruple&)>& visit) {
    std::size_t visited = 0;
    if (opts.sample && admissible_count(n) > *opts.sample) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        while (visited < *opts.sample) {
            Quadruple q{PointId{pick(rng)}, PointId{pick(rng)}, PointId{pick(rng)}, PointId{pick(rng)}};
            if (!admissible_indices(q)) continue;
            ++visited;
            if (!visit(q)) return visited;
        }
        return visited;
    }
    Quadruple q;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t w = 0; w < n; ++w) {
                    q = {PointId{x}, PointId{y}, PointId{z}, PointId{w}};
                    if (!admissible_indices(q)) continue;
                    ++visited;
                    if (!visit(q)) return visited;
                }
            }
        }
    }
    return visited;
}

PointMap::PointMap(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target,
                   std::vector<PointId> image)
    : source_(&source), target_(&target), image_(std::move(image)) {
    if (image_.size() != source.size())
        throw DomainError("point map must assign every source point (" + std::to_string(source.size()) +
                          "), got " + std::to_string(image_.size()));
    std::vector<bool> hit(target.size(), false);
    for (PointId p : image_) {
        target.check_point(p);
        if (hit[p.index]) throw DomainError("point map is not injective at target " + target.label(p));
        hit[p.index] = true;
    }
}

PointMap PointMap::identity(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target) {
    std::vector<PointId> image;
    image.reserve(source.size());
    for (const auto& l : source.labels()) image.push_back(target.at(l));
    return PointMap(source, target, std::move(image));
}

PointMap PointMap::from_label_pairs(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target,
                                    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::optional<PointId>> partial(source.size());
    for (const auto& [from, to] : pairs) {
        PointId s = source.at(from);
        if (partial[s.index]) throw DomainError("point '" + from + "' is assigned twice");
        partial[s.index] = target.at(to);
    }
    std::vector<PointId> image;
    image.reserve(source.size());
    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (!partial[i]) throw DomainError("point '" + source.labels()[i] + "' has no image");
        image.push_back(*partial[i]);
    }
    return PointMap(source, target, std::move(image));
}

MoebiusReport check_moebius(const PointMap& m, const SweepOptions& opts) {
    MoebiusReport r;
    const auto& src = m.source();
    const auto& dst = m.target();
    r.quadruples = for_each_admissible_quadruple(src.size(), opts, [&](const Quadruple& q) {
        ProjectiveTriple before = crt(src, q[0], q[1], q[2], q[3]);
        ProjectiveTriple after = crt(dst, m(q[0]), m(q[1]), m(q[2]), m(q[3]));
        double dev = before.linf_distance(after);
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.worst = q;
        }
        if (!is_ultrametric_point(before, opts.tol)) r.source_crt_ultrametric = false;
        return true;
    });
    r.preserves_crt = r.max_deviation <= opts.tol.rel;
    return r;
}

bool is_moebius_map(const PointMap& m, const SweepOptions& opts) {
    const auto& src = m.source();
    const auto& dst = m.target();
    bool ok = true;
    for_each_admissible_quadruple(src.size(), opts, [&](const Quadruple& q) {
        ProjectiveTriple before = crt(src, q[0], q[1], q[2], q[3]);
        ProjectiveTriple after = crt(dst, m(q[0]), m(q[1]), m(q[2]), m(q[3]));
        ok = before.linf_distance(after) <= opts.tol.rel;
        return ok;
    });
    return ok;
}

bool are_moebius_equivalent(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b,
                            const SweepOptions& opts) {
    if (!a.same_point_set(b)) throw DomainError("Moebius equivalence needs the same point set");
    return is_moebius_map(PointMap::identity(a, b), opts);
}

bool is_ultrametric_moebius(const ExtendedMetricSpace& space, const SweepOptions& opts) {
    bool ok = true;
    for_each_admissible_quadruple(space.size(), opts, [&](const Quadruple& q) {
        ok = is_ultrametric_point(crt(space, q[0], q[1], q[2], q[3]), opts.tol);
        return ok;
    });
    return ok;
}

ExtendedMetricSpace send_to_infinity(const ExtendedMetricSpace& space, PointId omega) {
    space.check_point(omega);
    if (space.has_remote_point())
        throw DomainError("space already has remote point '" + space.label(*space.omega()) + "'");
    const std::size_t n = space.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (i == omega.index || j == omega.index) {
                m[i * n + j] = std::numeric_limits<double>::infinity();
                continue;
            }
            const double ri = space.raw_dist(PointId{i}, omega);
            const double rj = space.raw_dist(PointId{j}, omega);
            if (ri == 0.0 || rj == 0.0) throw DomainError("a point sits at distance 0 from the new remote point");
            m[i * n + j] = space.raw_dist(PointId{i}, PointId{j}) / (ri * rj);
        }
    }
    return ExtendedMetricSpace::from_distances(space.labels(), omega.index, std::move(m), TriangleCheck::record);
}

ExtendedMetricSpace rescale(const ExtendedMetricSpace& space, std::span<const double> lambda) {
    const std::size_t n = space.size();
    if (lambda.size() != n) throw DomainError("rescale needs one factor per point");
    for (double l : lambda) {
        if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("rescale factors must be positive and finite");
    }
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            m[i * n + j] = lambda[i] * lambda[j] * space.raw_dist(PointId{i}, PointId{j});
        }
    }
    auto omega = space.omega();
    return ExtendedMetricSpace::from_distances(space.labels(), omega ? std::optional(omega->index) : std::nullopt,
                                               std::move(m), TriangleCheck::record);
}

}  // namespace ultratree
