#pragma once

#include <compare>
#include <optional>

#include "ultratree/filling.hpp"
#include "ultratree/metric_space.hpp"

namespace ultratree {

/// End of a filling tree: iota(z) for finite z is the end of the ray t -> [z, t],
/// the omega end is the common end of the descending rays t -> [z, -t].
class BoundaryPoint {
public:
    static BoundaryPoint finite(PointId z) { return BoundaryPoint(z); }
    static BoundaryPoint omega_end() { return BoundaryPoint(std::nullopt); }

    bool is_omega_end() const noexcept { return !z_.has_value(); }
    /// Anchor of a finite end. Throws DomainError for the omega end.
    PointId anchor() const;

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

private:
    explicit BoundaryPoint(std::optional<PointId> z) : z_(z) {}
    std::optional<PointId> z_;
};

/// iota: Z -> boundary. The remote point maps to the omega end.
BoundaryPoint iota(const FillingTree& tree, PointId z);
/// Inverse of iota.
PointId iota_inverse(const FillingTree& tree, const BoundaryPoint& a);

/// (a|b)_x = |x u| where [x,a) and [x,b) part at u; +inf when a == b.
///   finite ends:  t - min(t, h(z,z1)) - min(t, h(z,z2)) + h(z1,z2)
///   with omega:   t - min(t, h(z,z1))
double gromov_product_boundary(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                               const TreePoint& x);

/// (a|y)_x for an end a and a tree point y.
double gromov_product_mixed(const FillingTree& tree, const BoundaryPoint& a, const TreePoint& y,
                            const TreePoint& x);

/// B_a(x, y) = lim |x a_i| - |y a_i|.
double busemann(const FillingTree& tree, const BoundaryPoint& a, const TreePoint& x, const TreePoint& y);

/// Bourdon metric rho_x(a,b) = exp(-(a|b)_x) on the boundary, labelled like
/// the base (iota^-1), without a remote point.
ExtendedMetricSpace bourdon_metric(const FillingTree& tree, const TreePoint& x);

/// rho_{omega,o}(a,b) = rho_o(a,b) / (rho_o(a,omega) rho_o(b,omega)) with the
/// omega end remote; labelled like the base.
ExtendedMetricSpace boundary_metric_with_remote(const FillingTree& tree, const TreePoint& o);

/// Boundary with its canonical Moebius structure pulled back along iota.
/// For o = [u, 0] this reproduces the base metric.
ExtendedMetricSpace canonical_boundary_space(const FillingTree& tree, const TreePoint& o);

/// Common point of the three lines between distinct ends a, b, c. Throws
/// DomainError unless the ends are distinct.
TreePoint ideal_tripod(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                       const BoundaryPoint& c);

/// Point at distance d >= 0 from x along the ray [x, a).
TreePoint along_ray(const FillingTree& tree, const TreePoint& x, const BoundaryPoint& a, double d);

}  // namespace ultratree
