#pragma once

#include "ultratree/boundary.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/metric_space.hpp"
#include "ultratree/moebius.hpp"

namespace ultratree {

/// Diameter 1 and every point has a partner at distance 1. Spaces with a
/// remote point are never antipodal diameter-1.
bool is_antipodal_diam1(const ExtendedMetricSpace& space, const Tolerance& tol = kDefaultTolerance);

/// How much the membership preconditions of the M^a_1 operations are checked.
enum class Membership { check, trust };

/// d rho1 / d rho2 at xi:
///   rho1(xi,eta) rho1(xi,eta') rho2(eta,eta') / (rho1(eta,eta') rho2(xi,eta) rho2(xi,eta'))
/// so that d rho_y / d rho_x (zeta) = exp(B_zeta(x, y)) for Bourdon metrics.
/// Evaluated with eta, eta' = the two least-index points other than xi. With Membership::check, throws ContractError unless
/// both metrics are antipodal diameter-1 and Moebius equivalent (quadruples
/// per `opts`).
double metric_derivative(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, PointId xi,
                         const SweepOptions& opts = {}, Membership membership = Membership::check);

/// Same value through an explicit (eta, eta') pair; used to test that the
/// derivative does not depend on the choice.
double metric_derivative(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, PointId xi,
                         PointId eta, PointId eta_prime);

/// max over zeta of ln (d rho1 / d rho2)(zeta).
double dist_ma1(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, const SweepOptions& opts = {},
                Membership membership = Membership::check);

/// Tree point x whose Bourdon metric is rho. rho is labelled like the base of
/// `tree`. Throws ContractError if rho is not an antipodal diameter-1
/// ultrametric in the canonical Moebius class, or if the reconstructed point
/// does not reproduce rho.
TreePoint reconstruct_point(const FillingTree& tree, const ExtendedMetricSpace& rho, const SweepOptions& opts = {});

}  // namespace ultratree
