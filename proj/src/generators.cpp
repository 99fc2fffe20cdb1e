#include "ultratree/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ultratree/errors.hpp"

namespace ultratree {

ExtendedMetricSpace random_dendrogram_space(Rng& rng, const DendrogramOptions& opts) {
    const std::size_t n = opts.points;
    if (n < 3) throw DomainError("a random space needs at least 3 points");
    if (!(opts.min_height <= opts.max_height)) throw DomainError("empty height range");
    const double inf = std::numeric_limits<double>::infinity();

    std::optional<std::size_t> omega;
    if (opts.with_remote) omega = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);

    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != omega) finite.push_back(i);
    }
    const std::size_t m = finite.size();

    std::uniform_real_distribution<double> pick_height(opts.min_height, opts.max_height);
    std::vector<double> merge(m - 1);
    for (double& h : merge) {
        h = pick_height(rng);
        if (opts.grid) h = std::clamp(std::round(h / *opts.grid) * *opts.grid, opts.min_height, opts.max_height);
    }
    std::sort(merge.begin(), merge.end(), std::greater<>());

    std::vector<double> heights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) heights[i * n + j] = inf;
            else if (i == omega || j == omega) heights[i * n + j] = -inf;
        }
    }

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i : finite) clusters.push_back({i});
    for (double h : merge) {
        std::uniform_int_distribution<std::size_t> pick(0, clusters.size() - 1);
        std::size_t a = pick(rng);
        std::size_t b = pick(rng);
        while (b == a) b = pick(rng);
        for (std::size_t x : clusters[a]) {
            for (std::size_t y : clusters[b]) {
                heights[x * n + y] = h;
                heights[y * n + x] = h;
            }
        }
        clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
    }

    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    return ExtendedMetricSpace::from_heights(std::move(labels), omega, std::move(heights));
}

TreePoint random_tree_point(const FillingTree& tree, Rng& rng, double lo, double hi) {
    auto anchors = tree.anchors();
    std::uniform_int_distribution<std::size_t> pick(0, anchors.size() - 1);
    std::uniform_real_distribution<double> height(lo, hi);
    PointId a = anchors[pick(rng)];
    return tree.point(a, height(rng));
}

TreePoint random_tree_point(const FillingTree& tree, Rng& rng) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto anchors = tree.anchors();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors.size(); ++j) {
            double h = tree.height(anchors[i], anchors[j]);
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
    }
    return random_tree_point(tree, rng, lo - 1.0, hi + 1.0);
}

BoundaryPoint random_boundary_point(const FillingTree& tree, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, tree.base().size() - 1);
    return iota(tree, PointId{pick(rng)});
}

}  // namespace ultratree
