#pragma once

#include <cstddef>
#include <vector>

#include "ultratree/boundary.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/metric_space.hpp"

// Reference implementations used to check the library. They rebuild the
// filling as an explicit graph and never call the library's geometry.

namespace ultratree::oracle {

/// The part of a filling between two heights, materialized as a graph. Vertices
/// are the classes {z' : h(z, z') >= L} at every level L of a finite ladder;
/// consecutive levels along each ray are joined by an edge of length equal to
/// the level gap. Every merge height of the base is added to the ladder, so
/// the graph is the tree itself, cut off at the lowest and highest level.
class TreeGraph {
public:
    using Node = std::size_t;

    /// `levels` must contain the heights of every point that will be looked
    /// up; merge heights are added automatically unless `grid_only`.
    TreeGraph(const ExtendedMetricSpace& base, std::vector<double> levels, bool grid_only = false);

    /// Vertex of [z, t]; t must be on the ladder.
    Node node(PointId z, double t) const;
    /// Vertex at the ladder level closest to t.
    Node nearest(PointId z, double t) const;
    Node node(const TreePoint& p) const { return node(p.anchor, p.t); }

    std::size_t size() const noexcept { return level_of_.size(); }
    double level(Node v) const { return levels_[level_of_[v]]; }
    double lowest() const { return levels_.front(); }
    double highest() const { return levels_.back(); }

    /// Weighted shortest paths (Dijkstra).
    std::vector<double> distances_from(Node s) const;
    double distance(Node a, Node b) const { return distances_from(a)[b]; }
    /// Edge counts (BFS).
    std::vector<std::size_t> hops_from(Node s) const;

    /// Vertex minimizing the sum of distances to a, b, c.
    Node median(Node a, Node b, Node c) const;

    /// Probe far out toward an end: [z, highest] for iota(z), the bottom of
    /// the ladder for the omega end.
    Node probe(const BoundaryPoint& end) const;

private:
    std::size_t level_index(double t) const;
    Node vertex(std::size_t level, std::size_t rep) const;

    const ExtendedMetricSpace* base_;
    std::vector<PointId> finite_;
    std::vector<double> levels_;
    std::vector<std::vector<std::size_t>> rep_;  // rep_[level][finite index]
    std::vector<std::vector<Node>> id_;          // id_[level][rep] or npos
    std::vector<std::size_t> level_of_;
    std::vector<std::vector<std::pair<Node, double>>> adj_;
};

/// Heights that put probes beyond every branch point of the filling for the
/// given query heights.
std::vector<double> probe_ladder(const FillingTree& tree, const std::vector<double>& query_heights);

/// Probe-based boundary quantities on a TreeGraph.
class EndGeometry {
public:
    EndGeometry(const FillingTree& tree, const TreeGraph& graph);

    double gromov(const BoundaryPoint& a, const BoundaryPoint& b, const TreePoint& x) const;
    double busemann(const BoundaryPoint& a, const TreePoint& x, const TreePoint& y) const;
    /// exp(-(a|b)_x) over base labels, row-major, 0 on the diagonal.
    std::vector<double> bourdon(const TreePoint& x) const;
    /// Tripod of the three ends, as the median of their probes.
    TreeGraph::Node ideal_tripod(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c) const;

    const TreeGraph& graph() const noexcept { return *graph_; }

private:
    const FillingTree* tree_;
    const TreeGraph* graph_;
    std::vector<BoundaryPoint> ends_;
    std::vector<std::vector<double>> probe_dist_;  // Dijkstra rows from each end probe
};

/// Two largest of the three products in every triangle of Z_omega agree
/// within `rel`. Direct triple loop over the distance matrix.
bool brute_force_ultrametric(const ExtendedMetricSpace& space, double rel);

}  // namespace ultratree::oracle
