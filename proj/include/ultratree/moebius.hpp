#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ultratree/metric_space.hpp"

namespace ultratree {

using Quadruple = std::array<PointId, 4>;

/// How quadruple validators enumerate Q. Exhaustive by default; with
/// `sample` set and more admissible quadruples than that, a reproducible
/// uniform sample of `*sample` admissible quadruples is drawn from `seed`.
struct SweepOptions {
    Tolerance tol = kDefaultTolerance;
    std::optional<std::size_t> sample;
    std::uint64_t seed = 0;
};

/// Calls `visit` on admissible quadruples of an n-point set until it returns
/// false. Returns the number visited.
std::size_t for_each_admissible_quadruple(std::size_t n, const SweepOptions& opts,
                                          const std::function<bool(const Quadruple&)>& visit);

/// Injective, total assignment between the point sets of two spaces. Holds
/// non-owning references; both spaces must outlive the map.
class PointMap {
public:
    PointMap(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target, std::vector<PointId> image);

    /// Matches points by label. Throws DomainError if a source label is
    /// missing in the target.
    static PointMap identity(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target);
    static PointMap from_label_pairs(const ExtendedMetricSpace& source, const ExtendedMetricSpace& target,
                                     const std::vector<std::pair<std::string, std::string>>& pairs);

    const ExtendedMetricSpace& source() const noexcept { return *source_; }
    const ExtendedMetricSpace& target() const noexcept { return *target_; }
    PointId operator()(PointId p) const { return image_.at(p.index); }
    const std::vector<PointId>& image() const noexcept { return image_; }
    bool is_surjective() const noexcept { return image_.size() == target_->size(); }

private:
    const ExtendedMetricSpace* source_;
    const ExtendedMetricSpace* target_;
    std::vector<PointId> image_;
};

struct MoebiusReport {
    bool preserves_crt = true;
    double max_deviation = 0.0;  // simplex max-norm
    std::size_t quadruples = 0;
    bool source_crt_ultrametric = true;  // every visited source crt is an ultrametric point
    std::optional<Quadruple> worst;
};

/// Full sweep without early exit; used where the deviation itself matters.
MoebiusReport check_moebius(const PointMap& m, const SweepOptions& opts = {});

bool is_moebius_map(const PointMap& m, const SweepOptions& opts = {});

/// Identity map between two metrics on the same labelled point set. Throws
/// DomainError on point-set mismatch.
bool are_moebius_equivalent(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b,
                            const SweepOptions& opts = {});

/// Every admissible crt is an ultrametric point.
bool is_ultrametric_moebius(const ExtendedMetricSpace& space, const SweepOptions& opts = {});

/// Makes `omega` remote: rho'(a,b) = rho(a,b) / (rho(a,omega) rho(b,omega)).
/// The input metric plays the role of the base-pointed metric rho_o. The
/// output is Moebius equivalent to the input and an ultrametric on Z_omega
/// whenever the input is an ultrametric Moebius space; otherwise the triangle
/// inequality is only recorded. Throws DomainError if the input already has a
/// remote point or `omega` is at distance 0 from another point.
ExtendedMetricSpace send_to_infinity(const ExtendedMetricSpace& space, PointId omega);

/// rho'(a,b) = lambda(a) lambda(b) rho(a,b). The result may leave the metric
/// axioms; check `satisfies_triangle()` on it. Throws DomainError for
/// nonpositive or non-finite lambda or a size mismatch.
ExtendedMetricSpace rescale(const ExtendedMetricSpace& space, std::span<const double> lambda);

}  // namespace ultratree
