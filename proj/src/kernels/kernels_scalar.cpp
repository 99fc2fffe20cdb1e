#include "ultratree/kernels.hpp"

#include <cassert>

namespace ultratree::kernels {
namespace impl {
namespace {

// Same selection rule as minpd/maxpd and vminq/vmaxq on non-NaN input.
inline double lane_min(double a, double b) { return a < b ? a : b; }
inline double lane_max(double a, double b) { return a > b ? a : b; }

bool ultrametric_violation(std::span<const double> row_x, std::span<const double> row_y, double h_xy,
                           double slack) {
    assert(row_x.size() == row_y.size());
    const double bound = h_xy + slack;
    for (std::size_t z = 0; z < row_x.size(); ++z) {
        if (bound < lane_min(row_x[z], row_y[z])) return true;
    }
    return false;
}

void minimax_relax(std::span<double> row_i, std::span<const double> row_k, double d_ik) {
    assert(row_i.size() == row_k.size());
    for (std::size_t j = 0; j < row_i.size(); ++j) {
        row_i[j] = lane_min(row_i[j], lane_max(d_ik, row_k[j]));
    }
}

void gromov_row(std::span<double> out, std::span<const double> h_base, std::span<const double> h_a,
                double t, double m_a) {
    assert(out.size() == h_base.size() && out.size() == h_a.size());
    const double lead = t - m_a;
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = (lead - lane_min(t, h_base[j])) + h_a[j];
    }
}

void tree_distance_row(std::span<double> out, std::span<const double> t, std::span<const double> h,
                       double t_p) {
    assert(out.size() == t.size() && out.size() == h.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double m = lane_min(lane_min(t_p, t[j]), h[j]);
        out[j] = (t_p + t[j]) - 2.0 * m;
    }
}

}  // namespace
}  // namespace impl

namespace detail {
const KernelTable scalar_table{&impl::ultrametric_violation, &impl::minimax_relax, &impl::gromov_row,
                                 &impl::tree_distance_row};
}

}  // namespace ultratree::kernels
