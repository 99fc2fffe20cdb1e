#include "ultratree/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

namespace ultratree {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string pair_name(const std::vector<std::string>& labels, std::size_t i, std::size_t j) {
    return "(" + labels[i] + ", " + labels[j] + ")";
}

void check_shape(const std::vector<std::string>& labels, std::optional<std::size_t> omega,
                 std::size_t matrix_size) {
    const std::size_t n = labels.size();
    if (n < 3) throw AxiomViolation("cardinality", "a space needs at least 3 points, got " + std::to_string(n));
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw AxiomViolation("labels", "empty point label");
        if (!seen.insert(l).second) throw AxiomViolation("labels", "duplicate point label '" + l + "'");
    }
    if (omega && *omega >= n) throw AxiomViolation("remote-point", "remote point index out of range");
    if (matrix_size != n * n)
        throw AxiomViolation("cardinality", "matrix has " + std::to_string(matrix_size) + " entries, expected " +
                                                std::to_string(n * n));
}

// Entry of a cross-ratio product with infinite factors pulled out: the value
// is value * inf^order.
struct ScaledProduct {
    double value = 1.0;
    int order = 0;
    bool zero_times_inf = false;
};

ScaledProduct factor(const ExtendedMetricSpace& s, PointId p, PointId q) {
    if (p == q) return {0.0, 0, false};
    if (s.is_remote(p) || s.is_remote(q)) return {1.0, 1, false};
    return {s.raw_dist(p, q), 0, false};
}

ScaledProduct times(ScaledProduct a, ScaledProduct b) {
    ScaledProduct r;
    r.value = a.value * b.value;
    r.order = a.order + b.order;
    r.zero_times_inf = (a.value == 0.0 && b.order > 0) || (b.value == 0.0 && a.order > 0);
    return r;
}

std::array<ScaledProduct, 3> crt_products(const ExtendedMetricSpace& s, PointId x, PointId y, PointId z,
                                          PointId w) {
    return {times(factor(s, x, y), factor(s, z, w)), times(factor(s, x, z), factor(s, y, w)),
            times(factor(s, x, w), factor(s, y, z))};
}

}  // namespace

ExtendedMetricSpace ExtendedMetricSpace::from_distances(std::vector<std::string> labels,
                                                        std::optional<std::size_t> omega,
                                                        std::vector<double> matrix, TriangleCheck check,
                                                        const Tolerance& tol) {
    check_shape(labels, omega, matrix.size());
    ExtendedMetricSpace s;
    s.labels_ = std::move(labels);
    if (omega) s.omega_ = PointId{*omega};
    s.dist_ = std::move(matrix);
    s.encoding_ = Encoding::distances;
    s.validate(check, tol);
    s.heights_.resize(s.dist_.size());
    std::transform(s.dist_.begin(), s.dist_.end(), s.heights_.begin(), [](double d) { return 0.0 - std::log(d); });  // +0 for d == 1
    return s;
}

ExtendedMetricSpace ExtendedMetricSpace::from_heights(std::vector<std::string> labels,
                                                      std::optional<std::size_t> omega,
                                                      std::vector<double> heights, TriangleCheck check,
                                                      const Tolerance& tol) {
    check_shape(labels, omega, heights.size());
    const std::size_t n = labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double h = heights[i * n + j];
            if (std::isnan(h)) throw AxiomViolation("symmetry", "NaN height at " + pair_name(labels, i, j));
            bool remote_pair = i != j && omega && (*omega == i || *omega == j);
            if (i == j && h != kInf)
                throw AxiomViolation("diagonal", "height of a point to itself must be inf at " + labels[i]);
            if (remote_pair && h != -kInf)
                throw AxiomViolation("remote-point", "height to the remote point must be -inf at " +
                                                         pair_name(labels, i, j));
            if (i != j && !remote_pair && !std::isfinite(h))
                throw AxiomViolation("remote-point", "infinite height between finite points " +
                                                         pair_name(labels, i, j));
        }
    }
    std::vector<double> dist(heights.size());
    std::transform(heights.begin(), heights.end(), dist.begin(), [](double h) { return std::exp(-h); });
    ExtendedMetricSpace s;
    s.labels_ = std::move(labels);
    if (omega) s.omega_ = PointId{*omega};
    s.dist_ = std::move(dist);
    s.encoding_ = Encoding::heights;
    s.validate(check, tol);
    s.heights_ = std::move(heights);
    return s;
}

void ExtendedMetricSpace::validate(TriangleCheck check, const Tolerance& tol) {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist_[i * n + j];
            if (std::isnan(d) || d < 0.0)
                throw AxiomViolation("positivity", "negative or NaN distance at " + pair_name(labels_, i, j));
            if (d != dist_[j * n + i])
                throw AxiomViolation("symmetry", "rho" + pair_name(labels_, i, j) + " != rho" +
                                                     pair_name(labels_, j, i));
            if (i == j) {
                if (d != 0.0) throw AxiomViolation("diagonal", "rho(" + labels_[i] + ", " + labels_[i] + ") != 0");
                continue;
            }
            const bool remote_pair = omega_ && (omega_->index == i || omega_->index == j);
            if (remote_pair && d != kInf)
                throw AxiomViolation("remote-point", "distance to the remote point must be inf at " +
                                                         pair_name(labels_, i, j));
            if (!remote_pair && d == kInf)
                throw AxiomViolation("remote-point", "infinite distance between finite points " +
                                                         pair_name(labels_, i, j));
            if (!remote_pair && d == 0.0)
                throw AxiomViolation("positivity", "zero distance between distinct points " +
                                                       pair_name(labels_, i, j));
        }
    }
    triangle_ok_ = true;
    for (std::size_t i = 0; i < n && triangle_ok_; ++i) {
        if (omega_ && omega_->index == i) continue;
        for (std::size_t j = i + 1; j < n && triangle_ok_; ++j) {
            if (omega_ && omega_->index == j) continue;
            const double dij = dist_[i * n + j];
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j || (omega_ && omega_->index == k)) continue;
                const double via = dist_[i * n + k] + dist_[k * n + j];
                if (!tol.less_equal(dij, via)) {
                    triangle_ok_ = false;
                    if (check == TriangleCheck::enforce) {
                        std::ostringstream msg;
                        msg.precision(17);
                        msg << "rho" << pair_name(labels_, i, j) << " = " << dij << " exceeds rho"
                            << pair_name(labels_, i, k) << " + rho" << pair_name(labels_, k, j) << " = " << via;
                        throw AxiomViolation("triangle", msg.str());
                    }
                    break;
                }
            }
        }
    }
}

void ExtendedMetricSpace::check_point(PointId p) const {
    if (p.index >= size()) throw DomainError("unknown point id " + std::to_string(p.index));
}

ExtReal ExtendedMetricSpace::dist(PointId x, PointId y) const {
    check_point(x);
    check_point(y);
    return ExtReal(raw_dist(x, y));
}

double ExtendedMetricSpace::height(PointId x, PointId y) const {
    check_point(x);
    check_point(y);
    if (is_remote(x) || is_remote(y)) throw DomainError("height is undefined at the remote point");
    return heights_[x.index * size() + y.index];
}

std::optional<PointId> ExtendedMetricSpace::find(std::string_view label) const noexcept {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return PointId{static_cast<std::size_t>(it - labels_.begin())};
}

PointId ExtendedMetricSpace::at(std::string_view label) const {
    if (auto p = find(label)) return *p;
    throw DomainError("unknown point label '" + std::string(label) + "'");
}

std::vector<PointId> ExtendedMetricSpace::finite_points() const {
    std::vector<PointId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (!is_remote(PointId{i})) out.push_back(PointId{i});
    }
    return out;
}

std::vector<PointId> ExtendedMetricSpace::points() const {
    std::vector<PointId> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = PointId{i};
    return out;
}

ProjectiveTriple ProjectiveTriple::from_raw(double a, double b, double c) {
    std::array<double, 3> v{a, b, c};
    for (double x : v) {
        if (std::isnan(x) || x < 0.0) throw DomainError("projective triple entries must be nonnegative");
    }
    if (std::any_of(v.begin(), v.end(), [](double x) { return std::isinf(x); })) {
        for (double& x : v) x = std::isinf(x) ? 1.0 : 0.0;
    }
    const double sum = v[0] + v[1] + v[2];
    if (sum == 0.0) throw DomainError("projective triple (0:0:0) is not a point");
    ProjectiveTriple t;
    // Already canonical up to rounding of the sum: keep the bits.
    if (std::abs(sum - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) {
        t.v_ = v;
    } else {
        t.v_ = {v[0] / sum, v[1] / sum, v[2] / sum};
    }
    return t;
}

double ProjectiveTriple::linf_distance(const ProjectiveTriple& o) const noexcept {
    return std::max({std::abs(v_[0] - o.v_[0]), std::abs(v_[1] - o.v_[1]), std::abs(v_[2] - o.v_[2])});
}

bool is_admissible(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w) {
    const std::array<PointId, 4> q{x, y, z, w};
    for (PointId p : q) space.check_point(p);
    for (PointId p : q) {
        if (std::count(q.begin(), q.end(), p) >= 3) return false;
    }
    return true;
}

ProjectiveTriple crt(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w) {
    if (!is_admissible(space, x, y, z, w)) throw DomainError("crt of a non-admissible quadruple");
    auto e = crt_products(space, x, y, z, w);
    const int top = std::max({e[0].order, e[1].order, e[2].order});
    auto keep = [top](const ScaledProduct& p) { return p.order == top ? p.value : 0.0; };
    return ProjectiveTriple::from_raw(keep(e[0]), keep(e[1]), keep(e[2]));
}

ExtReal classical_cross_ratio(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w) {
    if (!is_admissible(space, x, y, z, w)) throw DomainError("cross ratio of a non-admissible quadruple");
    auto e = crt_products(space, x, y, z, w);
    const ScaledProduct& den = e[0];
    const ScaledProduct& num = e[1];
    if (num.zero_times_inf || den.zero_times_inf)
        throw NumericDomainError("cross ratio involves 0 * inf");
    if (num.order > den.order) return ExtReal::infinity();
    if (num.order < den.order) return ExtReal(0.0);
    return ExtReal(num.value) / ExtReal(den.value);
}

bool is_ultrametric_point(const ProjectiveTriple& t, const Tolerance& tol) {
    std::array<double, 3> v = t.entries();
    std::sort(v.begin(), v.end());
    return tol.equal(v[1], v[2]);
}

bool is_ultrametric_metric(const ExtendedMetricSpace& space, const Tolerance& tol) {
    const auto pts = space.finite_points();
    if (pts.size() < 3) return true;
    // rho(x,y) > (1 + rel) max(rho(x,z), rho(z,y))  <=>  h(x,y) + ~rel < min(h(x,z), h(z,y)).
    const double slack = std::max(tol.abs, std::log1p(tol.rel));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto row_x = space.height_row(pts[i]);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto row_y = space.height_row(pts[j]);
            if (kernels::ultrametric_violation(row_x, row_y, row_x[pts[j].index], slack)) return false;
        }
    }
    return true;
}

}  // namespace ultratree
