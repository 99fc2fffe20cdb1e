#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ultratree/ext_real.hpp"
#include "ultratree/tolerance.hpp"

namespace ultratree {

/// Dense index of a point within one space.
struct PointId {
    std::size_t index = 0;

    friend auto operator<=>(PointId, PointId) = default;
};

enum class Encoding { distances, heights };

/// Whether the triangle inequality on Z_omega is enforced or only recorded.
enum class TriangleCheck { enforce, record };

/// Finite set with an extended metric: at most one remote point omega sits at
/// distance inf from every other point. The matrix is stored as given, the
/// log-domain companion h = -ln(rho) is computed eagerly, so instances are
/// immutable and freely shareable between threads.
class ExtendedMetricSpace {
public:
    /// `matrix` is the full n*n row-major distance matrix (inf allowed only
    /// against omega). Throws AxiomViolation naming the first failed axiom.
    static ExtendedMetricSpace from_distances(std::vector<std::string> labels, std::optional<std::size_t> omega,
                                              std::vector<double> matrix,
                                              TriangleCheck check = TriangleCheck::enforce,
                                              const Tolerance& tol = kDefaultTolerance);

    /// `heights` is the full n*n matrix of h = -ln(rho): +inf on the diagonal,
    /// -inf against omega.
    static ExtendedMetricSpace from_heights(std::vector<std::string> labels, std::optional<std::size_t> omega,
                                            std::vector<double> heights,
                                            TriangleCheck check = TriangleCheck::enforce,
                                            const Tolerance& tol = kDefaultTolerance);

    std::size_t size() const noexcept { return labels_.size(); }
    std::optional<PointId> omega() const noexcept { return omega_; }
    bool has_remote_point() const noexcept { return omega_.has_value(); }
    bool is_remote(PointId p) const noexcept { return omega_ && *omega_ == p; }

    /// Throws DomainError if `p` is not a point of this space.
    void check_point(PointId p) const;

    ExtReal dist(PointId x, PointId y) const;
    double raw_dist(PointId x, PointId y) const noexcept { return dist_[x.index * size() + y.index]; }

    /// h(x, y) = -ln rho(x, y); +inf for x == y. Remote point argument is a
    /// DomainError.
    double height(PointId x, PointId y) const;

    /// Row of the height matrix, including -inf against omega.
    std::span<const double> height_row(PointId x) const noexcept {
        return {heights_.data() + x.index * size(), size()};
    }

    const std::string& label(PointId p) const { return labels_.at(p.index); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<PointId> find(std::string_view label) const noexcept;
    /// Like find, but throws DomainError for unknown labels.
    PointId at(std::string_view label) const;

    /// Z_omega: every point except the remote one, in index order.
    std::vector<PointId> finite_points() const;
    std::vector<PointId> points() const;

    bool satisfies_triangle() const noexcept { return triangle_ok_; }
    Encoding given_encoding() const noexcept { return encoding_; }

    /// Same labels in the same order.
    bool same_point_set(const ExtendedMetricSpace& other) const noexcept { return labels_ == other.labels_; }

private:
    ExtendedMetricSpace() = default;
    void validate(TriangleCheck check, const Tolerance& tol);

    std::vector<std::string> labels_;
    std::optional<PointId> omega_;
    std::vector<double> dist_;
    std::vector<double> heights_;
    Encoding encoding_ = Encoding::distances;
    bool triangle_ok_ = true;
};

/// Point (a:b:c) of the nonnegative simplex in the projective plane, held in
/// canonical form a + b + c = 1.
class ProjectiveTriple {
public:
    /// Canonicalizes nonnegative raw entries. Infinite entries are factored
    /// out first: they become 1 and the finite ones 0. Throws DomainError for
    /// negative or all-zero input. A triple already in canonical form is
    /// returned bit-identical.
    static ProjectiveTriple from_raw(double a, double b, double c);

    double a() const noexcept { return v_[0]; }
    double b() const noexcept { return v_[1]; }
    double c() const noexcept { return v_[2]; }
    double operator[](std::size_t i) const { return v_.at(i); }
    const std::array<double, 3>& entries() const noexcept { return v_; }

    /// Max-norm distance between canonical representatives.
    double linf_distance(const ProjectiveTriple& o) const noexcept;

    friend bool operator==(const ProjectiveTriple&, const ProjectiveTriple&) = default;

private:
    std::array<double, 3> v_{};
};

bool is_admissible(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w);

/// Cross ratio triple (rho(x,y)rho(z,w) : rho(x,z)rho(y,w) : rho(x,w)rho(y,z)),
/// with the remote point conventions: omega once factors inf out of every
/// entry, omega twice yields (0:1:1) up to the position of the (omega, omega)
/// pair. Throws DomainError for non-admissible quadruples.
ProjectiveTriple crt(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w);

/// Classical cross ratio rho(x,z)rho(y,w) / (rho(x,y)rho(z,w)) in [0, inf].
/// Any 0 * inf inside a product, or a 0/0 quotient, is a NumericDomainError.
ExtReal classical_cross_ratio(const ExtendedMetricSpace& space, PointId x, PointId y, PointId z, PointId w);

/// The two largest entries coincide up to `tol`.
bool is_ultrametric_point(const ProjectiveTriple& t, const Tolerance& tol = kDefaultTolerance);

/// Every distinct triple of Z_omega gives an ultrametric point.
bool is_ultrametric_metric(const ExtendedMetricSpace& space, const Tolerance& tol = kDefaultTolerance);

}  // namespace ultratree
