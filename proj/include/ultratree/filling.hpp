#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ultratree/metric_space.hpp"

namespace ultratree {

/// Point [anchor, t] of a filling tree, always held in canonical form: the
/// anchor is the least-index z' with h(anchor, z') >= t. Carries the id of
/// the tree it belongs to.
struct TreePoint {
    PointId anchor;
    double t = 0.0;
    std::uint64_t tree = 0;

    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

class NaturalGeodesic;

/// The tree X = (Z_omega x R) / ~ over an ultrametric with remote point, where
/// (z1,t1) ~ (z2,t2) iff t1 == t2 <= h(z1,z2). Nothing is materialized; every
/// query evaluates the defining formulas on the base heights.
///
/// Copies share the underlying data and the tree id.
class FillingTree {
public:
    /// Throws ContractError unless `base` has a remote point, at least two
    /// finite points and is an ultrametric on Z_omega.
    explicit FillingTree(ExtendedMetricSpace base, const Tolerance& tol = kDefaultTolerance);

    const ExtendedMetricSpace& base() const noexcept;
    std::uint64_t id() const noexcept;
    const Tolerance& tolerance() const noexcept;
    PointId omega() const noexcept;

    /// Z_omega in index order.
    std::span<const PointId> anchors() const noexcept;

    /// h(a, b) between finite base points; +inf for a == b.
    double height(PointId a, PointId b) const;

    /// Largest |h| over distinct finite pairs.
    double max_abs_height() const noexcept;

    /// Canonical [anchor, t]. Throws DomainError for the remote point, a
    /// foreign point id, or non-finite t.
    TreePoint point(PointId anchor, double t) const;
    TreePoint point(std::string_view label, double t) const;

    /// Throws DomainError if `p` belongs to a different tree.
    void check(const TreePoint& p) const;

    bool same_point(const TreePoint& p, const TreePoint& q) const;
    double distance(const TreePoint& p, const TreePoint& q) const;
    NaturalGeodesic geodesic(const TreePoint& p, const TreePoint& q) const;
    TreePoint tripod(const TreePoint& x, const TreePoint& y, const TreePoint& z) const;

    /// (x|y)_base = (|base x| + |base y| - |x y|) / 2.
    double gromov_product(const TreePoint& x, const TreePoint& y, const TreePoint& base) const;

    /// out[j] = distance(p, qs[j]), vectorized.
    void distances_from(const TreePoint& p, std::span<const TreePoint> qs, std::span<double> out) const;

    /// Row of the compact height matrix over anchors (index j pairs with
    /// anchors()[j]); +inf on the diagonal.
    std::span<const double> anchor_heights(PointId a) const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// Unit-speed geodesic from p to q: descend from p to the meeting height
/// m = min(t_p, t_q, h(z_p, z_q)), then ascend along z_q.
class NaturalGeodesic {
public:
    NaturalGeodesic(FillingTree tree, TreePoint from, TreePoint to);

    double length() const noexcept { return length_; }
    const TreePoint& from() const noexcept { return from_; }
    const TreePoint& to() const noexcept { return to_; }

    /// Point at arclength s from `from`. Throws DomainError outside
    /// [0, length()].
    TreePoint at(double s) const;

private:
    FillingTree tree_;
    TreePoint from_;
    TreePoint to_;
    double meet_ = 0.0;
    double length_ = 0.0;
};

}  // namespace ultratree
