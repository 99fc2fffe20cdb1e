#include "ultratree/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

namespace ultratree {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lim (|x a_T| - T) along the ray to a.
double ray_excess(const FillingTree& tree, const BoundaryPoint& a, const TreePoint& x) {
    tree.check(x);
    if (a.is_omega_end()) return x.t;
    return x.t - 2.0 * std::min(x.t, tree.height(x.anchor, a.anchor()));
}

// Symmetric n x n matrix of boundary Gromov products at x, base index order.
std::vector<double> gromov_matrix(const FillingTree& tree, const TreePoint& x) {
    tree.check(x);
    const auto& base = tree.base();
    const std::size_t n = base.size();
    const auto anchors = tree.anchors();
    const std::size_t m = anchors.size();
    const std::size_t w = tree.omega().index;
    const auto h_x = tree.anchor_heights(x.anchor);

    std::vector<double> g(n * n, 0.0);
    std::vector<double> row(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double m_i = std::min(x.t, h_x[i]);
        kernels::gromov_row(row, h_x, tree.anchor_heights(anchors[i]), x.t, m_i);
        const std::size_t ai = anchors[i].index;
        for (std::size_t j = i; j < m; ++j) {
            const std::size_t aj = anchors[j].index;
            g[ai * n + aj] = row[j];
            g[aj * n + ai] = row[j];
        }
        g[ai * n + w] = x.t - m_i;
        g[w * n + ai] = x.t - m_i;
    }
    g[w * n + w] = kInf;
    return g;
}

}  // namespace

PointId BoundaryPoint::anchor() const {
    if (!z_) throw DomainError("the omega end has no anchor");
    return *z_;
}

BoundaryPoint iota(const FillingTree& tree, PointId z) {
    tree.base().check_point(z);
    return z == tree.omega() ? BoundaryPoint::omega_end() : BoundaryPoint::finite(z);
}

PointId iota_inverse(const FillingTree& tree, const BoundaryPoint& a) {
    if (a.is_omega_end()) return tree.omega();
    tree.base().check_point(a.anchor());
    if (a.anchor() == tree.omega()) throw DomainError("finite end anchored at the remote point");
    return a.anchor();
}

double gromov_product_boundary(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                               const TreePoint& x) {
    tree.check(x);
    if (a == b) return kInf;
    if (a.is_omega_end()) return x.t - std::min(x.t, tree.height(x.anchor, b.anchor()));
    if (b.is_omega_end()) return x.t - std::min(x.t, tree.height(x.anchor, a.anchor()));
    const double m1 = std::min(x.t, tree.height(x.anchor, a.anchor()));
    const double m2 = std::min(x.t, tree.height(x.anchor, b.anchor()));
    return (x.t - m1) - m2 + tree.height(a.anchor(), b.anchor());
}

double gromov_product_mixed(const FillingTree& tree, const BoundaryPoint& a, const TreePoint& y,
                            const TreePoint& x) {
    return std::max(0.0, 0.5 * (tree.distance(x, y) + busemann(tree, a, x, y)));
}

double busemann(const FillingTree& tree, const BoundaryPoint& a, const TreePoint& x, const TreePoint& y) {
    return ray_excess(tree, a, x) - ray_excess(tree, a, y);
}

ExtendedMetricSpace bourdon_metric(const FillingTree& tree, const TreePoint& x) {
    std::vector<double> g = gromov_matrix(tree, x);
    for (double& v : g) v = std::exp(-v);
    return ExtendedMetricSpace::from_distances(tree.base().labels(), std::nullopt, std::move(g),
                                               TriangleCheck::record, tree.tolerance());
}

ExtendedMetricSpace boundary_metric_with_remote(const FillingTree& tree, const TreePoint& o) {
    const std::vector<double> g = gromov_matrix(tree, o);
    const std::size_t n = tree.base().size();
    const std::size_t w = tree.omega().index;
    std::vector<double> rho(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = kInf;
            if (i != w && j != w) v = std::exp(-(g[i * n + j] - g[i * n + w] - g[j * n + w]));
            rho[i * n + j] = v;
            rho[j * n + i] = v;
        }
    }
    return ExtendedMetricSpace::from_distances(tree.base().labels(), w, std::move(rho), TriangleCheck::record,
                                               tree.tolerance());
}

ExtendedMetricSpace canonical_boundary_space(const FillingTree& tree, const TreePoint& o) {
    // Boundary labels already follow iota^-1, so the relabelling is the identity.
    return boundary_metric_with_remote(tree, o);
}

TreePoint ideal_tripod(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                       const BoundaryPoint& c) {
    if (a == b || b == c || a == c) throw DomainError("tripod of ends needs three distinct ends");
    std::array<BoundaryPoint, 3> ends{a, b, c};
    std::vector<PointId> finite;
    for (const auto& e : ends) {
        if (!e.is_omega_end()) finite.push_back(e.anchor());
    }
    if (finite.size() == 2) return tree.point(finite[0], tree.height(finite[0], finite[1]));
    // Three rays up: the line through the highest-merging pair carries the tripod.
    const double h01 = tree.height(finite[0], finite[1]);
    const double h02 = tree.height(finite[0], finite[2]);
    const double h12 = tree.height(finite[1], finite[2]);
    if (h01 >= h02 && h01 >= h12) return tree.point(finite[0], h01);
    if (h02 >= h12) return tree.point(finite[0], h02);
    return tree.point(finite[1], h12);
}

TreePoint along_ray(const FillingTree& tree, const TreePoint& x, const BoundaryPoint& a, double d) {
    tree.check(x);
    if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("ray offset must be finite and nonnegative");
    if (a.is_omega_end()) return tree.point(x.anchor, x.t - d);
    const double meet = std::min(x.t, tree.height(x.anchor, a.anchor()));
    const double descent = x.t - meet;
    if (d <= descent) return tree.point(x.anchor, x.t - d);
    return tree.point(a.anchor(), meet + (d - descent));
}

}  // namespace ultratree
