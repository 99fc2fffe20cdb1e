// AArch64 only; Advanced SIMD is part of the base ISA there.
#include "ultratree/kernels.hpp"

#if defined(ULTRATREE_HAVE_NEON)

#include <arm_neon.h>

#include <cassert>

namespace ultratree::kernels {
namespace impl {
namespace {

constexpr std::size_t kLanes = 2;

inline double lane_min(double a, double b) { return a < b ? a : b; }
inline double lane_max(double a, double b) { return a > b ? a : b; }

// vminq/vmaxq differ from the scalar rule only for NaN and signed zeros;
// select explicitly so the lanes match the reference bit for bit.
inline float64x2_t vmin_sel(float64x2_t a, float64x2_t b) { return vbslq_f64(vcltq_f64(a, b), a, b); }
inline float64x2_t vmax_sel(float64x2_t a, float64x2_t b) { return vbslq_f64(vcgtq_f64(a, b), a, b); }

bool ultrametric_violation(std::span<const double> row_x, std::span<const double> row_y, double h_xy,
                           double slack) {
    assert(row_x.size() == row_y.size());
    const std::size_t n = row_x.size();
    const double bound = h_xy + slack;
    const float64x2_t vbound = vdupq_n_f64(bound);
    std::size_t z = 0;
    for (; z + kLanes <= n; z += kLanes) {
        float64x2_t m = vmin_sel(vld1q_f64(row_x.data() + z), vld1q_f64(row_y.data() + z));
        uint64x2_t lt = vcltq_f64(vbound, m);
        if ((vgetq_lane_u64(lt, 0) | vgetq_lane_u64(lt, 1)) != 0) return true;
    }
    for (; z < n; ++z) {
        if (bound < lane_min(row_x[z], row_y[z])) return true;
    }
    return false;
}

void minimax_relax(std::span<double> row_i, std::span<const double> row_k, double d_ik) {
    assert(row_i.size() == row_k.size());
    const std::size_t n = row_i.size();
    const float64x2_t vd = vdupq_n_f64(d_ik);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        float64x2_t via = vmax_sel(vd, vld1q_f64(row_k.data() + j));
        vst1q_f64(row_i.data() + j, vmin_sel(vld1q_f64(row_i.data() + j), via));
    }
    for (; j < n; ++j) row_i[j] = lane_min(row_i[j], lane_max(d_ik, row_k[j]));
}

void gromov_row(std::span<double> out, std::span<const double> h_base, std::span<const double> h_a,
                double t, double m_a) {
    assert(out.size() == h_base.size() && out.size() == h_a.size());
    const std::size_t n = out.size();
    const double lead = t - m_a;
    const float64x2_t vt = vdupq_n_f64(t);
    const float64x2_t vlead = vdupq_n_f64(lead);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        float64x2_t m = vmin_sel(vt, vld1q_f64(h_base.data() + j));
        vst1q_f64(out.data() + j, vaddq_f64(vsubq_f64(vlead, m), vld1q_f64(h_a.data() + j)));
    }
    for (; j < n; ++j) out[j] = (lead - lane_min(t, h_base[j])) + h_a[j];
}

void tree_distance_row(std::span<double> out, std::span<const double> t, std::span<const double> h,
                       double t_p) {
    assert(out.size() == t.size() && out.size() == h.size());
    const std::size_t n = out.size();
    const float64x2_t vtp = vdupq_n_f64(t_p);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        float64x2_t vt = vld1q_f64(t.data() + j);
        float64x2_t m = vmin_sel(vmin_sel(vtp, vt), vld1q_f64(h.data() + j));
        vst1q_f64(out.data() + j, vsubq_f64(vaddq_f64(vtp, vt), vmulq_f64(two, m)));
    }
    for (; j < n; ++j) {
        double m = lane_min(lane_min(t_p, t[j]), h[j]);
        out[j] = (t_p + t[j]) - 2.0 * m;
    }
}

}  // namespace
}  // namespace impl

namespace detail {
const KernelTable neon_table{&impl::ultrametric_violation, &impl::minimax_relax, &impl::gromov_row,
                                 &impl::tree_distance_row};
}

}  // namespace ultratree::kernels

#endif  // ULTRATREE_HAVE_NEON
