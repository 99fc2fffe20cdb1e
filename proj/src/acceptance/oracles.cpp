#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace ultratree::oracle {
namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t end_index(const FillingTree& tree, const BoundaryPoint& e) {
    return e.is_omega_end() ? tree.omega().index : e.anchor().index;
}

}  // namespace

TreeGraph::TreeGraph(const ExtendedMetricSpace& base, std::vector<double> levels, bool grid_only)
    : base_(&base), finite_(base.finite_points()) {
    const std::size_t n = finite_.size();
    auto h = [&](std::size_t i, std::size_t j) { return base.height_row(finite_[i])[finite_[j].index]; };
    if (!grid_only) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) levels.push_back(h(i, j));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw std::invalid_argument("tree graph needs at least two levels");
    levels_ = std::move(levels);

    const std::size_t k_count = levels_.size();
    rep_.assign(k_count, std::vector<std::size_t>(n));
    id_.assign(k_count, std::vector<Node>(n, npos));
    for (std::size_t k = 0; k < k_count; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = i;
            for (std::size_t j = 0; j < i; ++j) {
                if (h(i, j) >= levels_[k]) {
                    r = j;
                    break;
                }
            }
            rep_[k][i] = r;
            if (id_[k][r] == npos) {
                id_[k][r] = level_of_.size();
                level_of_.push_back(k);
            }
        }
    }
    adj_.resize(level_of_.size());
    for (std::size_t k = 0; k + 1 < k_count; ++k) {
        std::set<std::pair<Node, Node>> seen;
        const double w = levels_[k + 1] - levels_[k];
        for (std::size_t i = 0; i < n; ++i) {
            Node lo = id_[k][rep_[k][i]];
            Node hi = id_[k + 1][rep_[k + 1][i]];
            if (!seen.insert({lo, hi}).second) continue;
            adj_[lo].emplace_back(hi, w);
            adj_[hi].emplace_back(lo, w);
        }
    }
}

std::size_t TreeGraph::level_index(double t) const {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), t);
    if (it == levels_.end() || *it != t) throw std::invalid_argument("height is not on the ladder");
    return static_cast<std::size_t>(it - levels_.begin());
}

TreeGraph::Node TreeGraph::vertex(std::size_t level, std::size_t finite_index) const {
    return id_[level][rep_[level][finite_index]];
}

TreeGraph::Node TreeGraph::node(PointId z, double t) const {
    auto it = std::find(finite_.begin(), finite_.end(), z);
    if (it == finite_.end()) throw std::invalid_argument("not a finite base point");
    return vertex(level_index(t), static_cast<std::size_t>(it - finite_.begin()));
}

TreeGraph::Node TreeGraph::nearest(PointId z, double t) const {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - levels_.begin());
    if (k == levels_.size()) --k;
    else if (k > 0 && t - levels_[k - 1] < levels_[k] - t) --k;
    return node(z, levels_[k]);
}

std::vector<double> TreeGraph::distances_from(Node s) const {
    std::vector<double> d(size(), kInf);
    using Item = std::pair<double, Node>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (auto [v, w] : adj_[u]) {
            if (du + w < d[v]) {
                d[v] = du + w;
                pq.emplace(d[v], v);
            }
        }
    }
    return d;
}

std::vector<std::size_t> TreeGraph::hops_from(Node s) const {
    std::vector<std::size_t> d(size(), npos);
    std::deque<Node> q{s};
    d[s] = 0;
    while (!q.empty()) {
        Node u = q.front();
        q.pop_front();
        for (auto [v, w] : adj_[u]) {
            if (d[v] == npos) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    return d;
}

TreeGraph::Node TreeGraph::median(Node a, Node b, Node c) const {
    auto da = distances_from(a), db = distances_from(b), dc = distances_from(c);
    Node best = 0;
    double best_sum = kInf;
    for (Node v = 0; v < size(); ++v) {
        double s = da[v] + db[v] + dc[v];
        if (s < best_sum) {
            best_sum = s;
            best = v;
        }
    }
    return best;
}

TreeGraph::Node TreeGraph::probe(const BoundaryPoint& end) const {
    if (end.is_omega_end()) return vertex(0, 0);
    return node(end.anchor(), highest());
}

std::vector<double> probe_ladder(const FillingTree& tree, const std::vector<double>& query_heights) {
    double lo = 0.0, hi = 0.0;
    const auto anchors = tree.anchors();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors.size(); ++j) {
            const double h = tree.base().height_row(anchors[i])[anchors[j].index];
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
    }
    for (double t : query_heights) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    std::vector<double> out = query_heights;
    out.push_back(lo - 2.0);
    out.push_back(hi + 2.0);
    return out;
}

EndGeometry::EndGeometry(const FillingTree& tree, const TreeGraph& graph) : tree_(&tree), graph_(&graph) {
    const std::size_t n = tree.base().size();
    for (std::size_t i = 0; i < n; ++i) {
        ends_.push_back(PointId{i} == tree.omega() ? BoundaryPoint::omega_end() : BoundaryPoint::finite(PointId{i}));
        probe_dist_.push_back(graph.distances_from(graph.probe(ends_.back())));
    }
}

double EndGeometry::gromov(const BoundaryPoint& a, const BoundaryPoint& b, const TreePoint& x) const {
    const std::size_t ia = end_index(*tree_, a), ib = end_index(*tree_, b);
    const auto v = graph_->node(x);
    const double dab = probe_dist_[ia][graph_->probe(b)];
    return 0.5 * (probe_dist_[ia][v] + probe_dist_[ib][v] - dab);
}

double EndGeometry::busemann(const BoundaryPoint& a, const TreePoint& x, const TreePoint& y) const {
    const auto& row = probe_dist_[end_index(*tree_, a)];
    return row[graph_->node(x)] - row[graph_->node(y)];
}

std::vector<double> EndGeometry::bourdon(const TreePoint& x) const {
    const std::size_t n = ends_.size();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out[i * n + j] = out[j * n + i] = std::exp(-gromov(ends_[i], ends_[j], x));
        }
    }
    return out;
}

TreeGraph::Node EndGeometry::ideal_tripod(const BoundaryPoint& a, const BoundaryPoint& b,
                                          const BoundaryPoint& c) const {
    return graph_->median(graph_->probe(a), graph_->probe(b), graph_->probe(c));
}

bool brute_force_ultrametric(const ExtendedMetricSpace& space, double rel) {
    const auto pts = space.finite_points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                double d[3] = {space.raw_dist(pts[i], pts[j]), space.raw_dist(pts[i], pts[k]),
                               space.raw_dist(pts[j], pts[k])};
                std::sort(d, d + 3);
                if (d[2] - d[1] > rel * d[2]) return false;
            }
        }
    }
    return true;
}

}  // namespace ultratree::oracle
