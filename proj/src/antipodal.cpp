#include "ultratree/antipodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ultratree/errors.hpp"

namespace ultratree {
namespace {

double log_dist(const ExtendedMetricSpace& s, PointId p, PointId q) {
    const double d = s.raw_dist(p, q);
    if (d == 0.0 || std::isinf(d))
        throw NumericDomainError("metric derivative needs finite positive distances, got rho(" + s.label(p) + ", " +
                                 s.label(q) + ") = " + (d == 0.0 ? "0" : "inf"));
    return std::log(d);
}

double log_derivative(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, PointId xi, PointId eta,
                      PointId eta2) {
    // Oriented so that d rho_y / d rho_x = lambda_{x,y}^2 for Bourdon metrics.
    const double first = log_dist(rho1, xi, eta) + log_dist(rho1, xi, eta2) - log_dist(rho1, eta, eta2);
    const double second = log_dist(rho2, eta, eta2) - log_dist(rho2, xi, eta) - log_dist(rho2, xi, eta2);
    return first + second;
}

std::pair<PointId, PointId> canonical_etas(std::size_t n, PointId xi) {
    std::vector<PointId> picked;
    for (std::size_t i = 0; i < n && picked.size() < 2; ++i) {
        if (i != xi.index) picked.push_back(PointId{i});
    }
    return {picked[0], picked[1]};
}

void check_membership(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, const SweepOptions& opts) {
    if (!rho1.same_point_set(rho2)) throw DomainError("metrics live on different point sets");
    if (!is_antipodal_diam1(rho1, opts.tol) || !is_antipodal_diam1(rho2, opts.tol))
        throw ContractError("metric is not an antipodal diameter-1 metric");
    if (!are_moebius_equivalent(rho1, rho2, opts)) throw ContractError("metrics are not Moebius equivalent");
}

}  // namespace

bool is_antipodal_diam1(const ExtendedMetricSpace& space, const Tolerance& tol) {
    if (space.has_remote_point()) return false;
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i) {
        double far = 0.0;
        for (std::size_t j = 0; j < n; ++j) far = std::max(far, space.raw_dist(PointId{i}, PointId{j}));
        // Diameter 1 and an antipode for i are the same test row by row.
        if (!tol.equal(far, 1.0)) return false;
    }
    return true;
}

double metric_derivative(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, PointId xi,
                         const SweepOptions& opts, Membership membership) {
    rho1.check_point(xi);
    if (membership == Membership::check) check_membership(rho1, rho2, opts);
    else if (!rho1.same_point_set(rho2)) throw DomainError("metrics live on different point sets");
    auto [eta, eta2] = canonical_etas(rho1.size(), xi);
    return std::exp(log_derivative(rho1, rho2, xi, eta, eta2));
}

double metric_derivative(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, PointId xi,
                         PointId eta, PointId eta_prime) {
    if (!rho1.same_point_set(rho2)) throw DomainError("metrics live on different point sets");
    for (PointId p : {xi, eta, eta_prime}) rho1.check_point(p);
    if (xi == eta || xi == eta_prime || eta == eta_prime)
        throw DomainError("metric derivative needs distinct xi, eta, eta'");
    return std::exp(log_derivative(rho1, rho2, xi, eta, eta_prime));
}

double dist_ma1(const ExtendedMetricSpace& rho1, const ExtendedMetricSpace& rho2, const SweepOptions& opts,
                Membership membership) {
    if (membership == Membership::check) check_membership(rho1, rho2, opts);
    else if (!rho1.same_point_set(rho2)) throw DomainError("metrics live on different point sets");
    double sup = -std::numeric_limits<double>::infinity();
    for (PointId zeta : rho1.points()) {
        auto [eta, eta2] = canonical_etas(rho1.size(), zeta);
        sup = std::max(sup, log_derivative(rho1, rho2, zeta, eta, eta2));
    }
    return sup;
}

TreePoint reconstruct_point(const FillingTree& tree, const ExtendedMetricSpace& rho, const SweepOptions& opts) {
    const Tolerance& tol = opts.tol;
    if (!rho.same_point_set(tree.base())) throw DomainError("metric is not labelled like the filling's boundary");
    if (!is_antipodal_diam1(rho, tol)) throw ContractError("metric is not antipodal of diameter 1");
    if (!is_ultrametric_metric(rho, tol)) throw ContractError("antipodal diameter-1 metric is not an ultrametric");
    if (!are_moebius_equivalent(rho, tree.base(), opts))
        throw ContractError("metric is outside the canonical Moebius structure of the boundary");

    const std::size_t n = rho.size();
    std::optional<std::pair<PointId, PointId>> antipodes;
    for (std::size_t i = 0; i < n && !antipodes; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (tol.equal(rho.raw_dist(PointId{i}, PointId{j}), 1.0)) {
                antipodes = std::pair{PointId{i}, PointId{j}};
                break;
            }
        }
    }
    if (!antipodes) throw ContractError("no antipodal pair found");
    auto [a, b] = *antipodes;
    PointId c{0};
    while (c == a || c == b) ++c.index;
    if (!tol.equal(rho.raw_dist(a, c), 1.0)) std::swap(a, b);
    if (!tol.equal(rho.raw_dist(a, c), 1.0)) throw ContractError("neither antipode is at distance 1 from the third point");

    const TreePoint u = ideal_tripod(tree, iota(tree, a), iota(tree, b), iota(tree, c));
    const double offset = std::max(0.0, -std::log(rho.raw_dist(b, c)));
    const TreePoint x = along_ray(tree, u, iota(tree, a), offset);

    const ExtendedMetricSpace check = bourdon_metric(tree, x);
    double worst = 0.0;
    std::pair<PointId, PointId> where{};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double want = rho.raw_dist(PointId{i}, PointId{j});
            const double got = check.raw_dist(PointId{i}, PointId{j});
            if (!tol.equal(want, got) && std::abs(want - got) > worst) {
                worst = std::abs(want - got);
                where = {PointId{i}, PointId{j}};
            }
        }
    }
    if (worst > 0.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "reconstructed point does not reproduce the metric: rho(" << rho.label(where.first) << ", "
            << rho.label(where.second) << ") = " << rho.raw_dist(where.first, where.second)
            << " but the Bourdon metric gives " << check.raw_dist(where.first, where.second);
        throw ContractError(msg.str());
    }
    return x;
}

}  // namespace ultratree
