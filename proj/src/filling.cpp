#include "ultratree/filling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

namespace ultratree {
namespace {

constexpr std::size_t kNotAnchor = std::numeric_limits<std::size_t>::max();

std::uint64_t next_tree_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

struct FillingTree::Data {
    ExtendedMetricSpace base;
    Tolerance tol;
    std::uint64_t id = 0;
    PointId omega;
    std::vector<PointId> anchors;
    std::vector<std::size_t> compact;  // base index -> anchor slot
    std::vector<double> heights;       // anchors x anchors
    double max_abs_height = 0.0;

    std::size_t m() const { return anchors.size(); }
    double h(std::size_t a, std::size_t b) const { return heights[compact[a] * m() + compact[b]]; }
};

FillingTree::FillingTree(ExtendedMetricSpace base, const Tolerance& tol) {
    if (!base.has_remote_point()) throw ContractError("a filling needs a base space with a remote point");
    auto anchors = base.finite_points();
    if (anchors.size() < 2) throw ContractError("a filling needs at least two finite points (nonelementary tree)");
    if (!is_ultrametric_metric(base, tol)) throw ContractError("the base metric is not an ultrametric on Z_omega");

    auto d = std::make_shared<Data>(Data{std::move(base), tol, next_tree_id(), PointId{}, std::move(anchors), {}, {}, 0.0});
    d->omega = *d->base.omega();
    const std::size_t m = d->anchors.size();
    d->compact.assign(d->base.size(), kNotAnchor);
    for (std::size_t k = 0; k < m; ++k) d->compact[d->anchors[k].index] = k;
    d->heights.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        auto row = d->base.height_row(d->anchors[i]);
        for (std::size_t j = 0; j < m; ++j) {
            double h = row[d->anchors[j].index];
            d->heights[i * m + j] = h;
            if (i != j) d->max_abs_height = std::max(d->max_abs_height, std::abs(h));
        }
    }
    data_ = std::move(d);
}

const ExtendedMetricSpace& FillingTree::base() const noexcept { return data_->base; }
std::uint64_t FillingTree::id() const noexcept { return data_->id; }
const Tolerance& FillingTree::tolerance() const noexcept { return data_->tol; }
PointId FillingTree::omega() const noexcept { return data_->omega; }
std::span<const PointId> FillingTree::anchors() const noexcept { return data_->anchors; }
double FillingTree::max_abs_height() const noexcept { return data_->max_abs_height; }

double FillingTree::height(PointId a, PointId b) const {
    const auto& d = *data_;
    if (a.index >= d.compact.size() || b.index >= d.compact.size() || d.compact[a.index] == kNotAnchor ||
        d.compact[b.index] == kNotAnchor)
        throw DomainError("heights are only defined between finite points of the base");
    return d.h(a.index, b.index);
}

std::span<const double> FillingTree::anchor_heights(PointId a) const {
    const auto& d = *data_;
    if (a.index >= d.compact.size() || d.compact[a.index] == kNotAnchor)
        throw DomainError("not a finite point of the base");
    return {d.heights.data() + d.compact[a.index] * d.m(), d.m()};
}

TreePoint FillingTree::point(PointId anchor, double t) const {
    const auto& d = *data_;
    d.base.check_point(anchor);
    if (d.base.is_remote(anchor)) throw DomainError("the remote point cannot anchor a tree point");
    if (!std::isfinite(t)) throw DomainError("tree point height must be finite");
    auto row = anchor_heights(anchor);
    for (std::size_t k = 0; k < d.m(); ++k) {
        if (d.tol.log_less_equal(t, row[k])) return TreePoint{d.anchors[k], t, d.id};
    }
    return TreePoint{anchor, t, d.id};  // unreachable: row[self] == +inf
}

TreePoint FillingTree::point(std::string_view label, double t) const { return point(base().at(label), t); }

void FillingTree::check(const TreePoint& p) const {
    if (p.tree != data_->id) throw DomainError("tree point belongs to a different filling");
}

bool FillingTree::same_point(const TreePoint& p, const TreePoint& q) const {
    check(p);
    check(q);
    const auto& tol = data_->tol;
    return tol.log_equal(p.t, q.t) && tol.log_less_equal(p.t, data_->h(p.anchor.index, q.anchor.index));
}

double FillingTree::distance(const TreePoint& p, const TreePoint& q) const {
    check(p);
    check(q);
    const double h = data_->h(p.anchor.index, q.anchor.index);
    return p.t + q.t - 2.0 * std::min({p.t, q.t, h});
}

void FillingTree::distances_from(const TreePoint& p, std::span<const TreePoint> qs, std::span<double> out) const {
    check(p);
    if (out.size() != qs.size()) throw DomainError("distances_from: output size mismatch");
    std::vector<double> ts(qs.size());
    std::vector<double> hs(qs.size());
    auto row = anchor_heights(p.anchor);
    for (std::size_t j = 0; j < qs.size(); ++j) {
        check(qs[j]);
        ts[j] = qs[j].t;
        hs[j] = row[data_->compact[qs[j].anchor.index]];
    }
    kernels::tree_distance_row(out, ts, hs, p.t);
}

NaturalGeodesic FillingTree::geodesic(const TreePoint& p, const TreePoint& q) const {
    check(p);
    check(q);
    return NaturalGeodesic(*this, p, q);
}

double FillingTree::gromov_product(const TreePoint& x, const TreePoint& y, const TreePoint& base) const {
    const double v = 0.5 * (distance(base, x) + distance(base, y) - distance(x, y));
    return std::max(0.0, v);
}

TreePoint FillingTree::tripod(const TreePoint& x, const TreePoint& y, const TreePoint& z) const {
    auto g = geodesic(x, y);
    const double s = std::clamp(gromov_product(y, z, x), 0.0, g.length());
    return g.at(s);
}

NaturalGeodesic::NaturalGeodesic(FillingTree tree, TreePoint from, TreePoint to)
    : tree_(std::move(tree)), from_(from), to_(to) {
    const double h = tree_.height(from_.anchor, to_.anchor);
    meet_ = std::min({from_.t, to_.t, h});
    length_ = (from_.t - meet_) + (to_.t - meet_);
}

TreePoint NaturalGeodesic::at(double s) const {
    const double slack = tree_.tolerance().log_slack(length_, 0.0);
    if (!(s >= -slack && s <= length_ + slack))
        throw DomainError("arclength " + std::to_string(s) + " outside [0, " + std::to_string(length_) + "]");
    s = std::clamp(s, 0.0, length_);
    if (s == length_) return to_;
    const double descent = from_.t - meet_;
    if (s <= descent) return tree_.point(from_.anchor, from_.t - s);
    // Ascend along the target anchor: height s - t_from + 2m hits t_to at s = length.
    return tree_.point(to_.anchor, s - from_.t + 2.0 * meet_);
}

}  // namespace ultratree
