#pragma once

#include <cstddef>
#include <optional>
#include <random>

#include "ultratree/boundary.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/metric_space.hpp"

namespace ultratree {

using Rng = std::mt19937_64;

struct DendrogramOptions {
    std::size_t points = 8;  // |Z|, remote point included when with_remote
    double min_height = 0.0;
    double max_height = 10.0;
    std::optional<double> grid;  // snap merge heights to multiples of this step
    bool with_remote = true;
};

/// Random agglomerative dendrogram: clusters merge pairwise at decreasing
/// heights, h(x,y) is the height at which x and y first share a cluster.
/// Labels are p0..p{n-1}; the remote point sits at a random index.
ExtendedMetricSpace random_dendrogram_space(Rng& rng, const DendrogramOptions& opts);

/// Uniform anchor, height uniform in [lo, hi].
TreePoint random_tree_point(const FillingTree& tree, Rng& rng, double lo, double hi);

/// Heights spanning the interesting part of the tree: one unit beyond every
/// merge height on both sides.
TreePoint random_tree_point(const FillingTree& tree, Rng& rng);

BoundaryPoint random_boundary_point(const FillingTree& tree, Rng& rng);

}  // namespace ultratree
