#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultratree/boundary.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/moebius.hpp"

namespace ultratree {

/// Moebius embedding between the boundaries of two fillings, given
/// extensionally: assignment[i] is the target base point hit by source base
/// point i (boundary points are identified with base points through iota).
class BoundaryMap {
public:
    /// Throws DomainError for a non-injective or partial assignment and
    /// ContractError if the map does not preserve cross ratio triples.
    BoundaryMap(FillingTree source, FillingTree target, std::vector<PointId> assignment,
                const SweepOptions& opts = {});

    /// Matches base points by label.
    static BoundaryMap identity(FillingTree source, FillingTree target, const SweepOptions& opts = {});
    static BoundaryMap from_label_pairs(FillingTree source, FillingTree target,
                                        const std::vector<std::pair<std::string, std::string>>& pairs,
                                        const SweepOptions& opts = {});

    const FillingTree& source() const noexcept { return source_; }
    const FillingTree& target() const noexcept { return target_; }
    const std::vector<PointId>& assignment() const noexcept { return assignment_; }

    BoundaryPoint operator()(const BoundaryPoint& a) const;

    bool is_surjective() const noexcept { return assignment_.size() == target_.base().size(); }

    /// this o inner. Throws DomainError unless inner.target() is this->source().
    BoundaryMap after(const BoundaryMap& inner) const;

    /// Inverse of a bijective map; nullopt otherwise.
    std::optional<BoundaryMap> inverse() const;

private:
    struct Trusted {};
    BoundaryMap(Trusted, FillingTree source, FillingTree target, std::vector<PointId> assignment);

    FillingTree source_;
    FillingTree target_;
    std::vector<PointId> assignment_;
};

/// ln [a, c1, c2, b]: signed distance from Trip(a,b,c1) to Trip(a,b,c2) along
/// the line (a, b), positive toward b. Exactly 0 for c1 == c2. Throws
/// DomainError unless a, b, c1 and a, b, c2 are distinct.
double signed_tripod_displacement(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                                  const BoundaryPoint& c1, const BoundaryPoint& c2);

/// (a|b)_x vanishes, i.e. x lies on the line between the ends a and b.
bool on_line(const FillingTree& tree, const TreePoint& x, const BoundaryPoint& a, const BoundaryPoint& b);

/// Signed distance of x from Trip(a,b,c) along (a,b), positive toward b.
/// Throws DomainError if x is not on the line.
double line_coordinate(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                       const BoundaryPoint& c, const TreePoint& x);

/// Inverse of line_coordinate.
TreePoint line_point(const FillingTree& tree, const BoundaryPoint& a, const BoundaryPoint& b,
                     const BoundaryPoint& c, double s);

/// Triple used by lift: x = [z, t] always lies on (omega end, iota(z)); the
/// third end is the least-index finite point other than z.
struct LineFrame {
    BoundaryPoint a;
    BoundaryPoint b;
    BoundaryPoint c;
};
LineFrame default_frame(const FillingTree& tree, const TreePoint& x);

/// Image of x under the unique isometric embedding extending f:
/// F(x) = gamma'_{f(a), f(b), f(c)}(line_coordinate(a, b, c, x)).
TreePoint lift(const BoundaryMap& f, const TreePoint& x);

/// Same construction through an explicit frame with x on (a, b).
TreePoint lift(const BoundaryMap& f, const TreePoint& x, const LineFrame& frame);

struct EmbeddingReport {
    std::size_t pairs = 0;
    /// max |d(F x, F y) - d(x, y)| / max(1, d(x, y))
    double max_relative_deviation = 0.0;
    /// Probes far out along [x, a) must land on [F x, f(a)); largest miss.
    double max_boundary_deviation = 0.0;
    bool isometric = true;
    bool boundary_coherent = true;
};

EmbeddingReport verify_isometric_embedding(const BoundaryMap& f,
                                           const std::vector<std::pair<TreePoint, TreePoint>>& sample);

struct RoundtripReport {
    bool passed = false;
    double boundary_deviation = 0.0;  // max relative entry error of the recovered space
    EmbeddingReport embedding;
    bool inverse_is_identity = false;  // lift(f^-1) o lift(f) fixes every sample
    std::size_t samples = 0;
};

/// Fill the space, read it back off the boundary, fill again and certify that
/// the lift of the identity boundary map is an isometry between the fillings.
/// Throws ContractError if `space` cannot be filled.
RoundtripReport roundtrip_isometry(const ExtendedMetricSpace& space, std::size_t samples = 32,
                                   std::uint64_t seed = 0, const SweepOptions& opts = {});

}  // namespace ultratree
