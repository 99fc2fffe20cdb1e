// Compiled with -mavx2; only reached after a runtime CPU check.
#include "ultratree/kernels.hpp"

#include <immintrin.h>

#include <cassert>

namespace ultratree::kernels {
namespace impl {
namespace {

constexpr std::size_t kLanes = 4;

inline double lane_min(double a, double b) { return a < b ? a : b; }
inline double lane_max(double a, double b) { return a > b ? a : b; }

bool ultrametric_violation(std::span<const double> row_x, std::span<const double> row_y, double h_xy,
                           double slack) {
    assert(row_x.size() == row_y.size());
    const std::size_t n = row_x.size();
    const double bound = h_xy + slack;
    const __m256d vbound = _mm256_set1_pd(bound);
    std::size_t z = 0;
    for (; z + kLanes <= n; z += kLanes) {
        __m256d m = _mm256_min_pd(_mm256_loadu_pd(row_x.data() + z), _mm256_loadu_pd(row_y.data() + z));
        if (_mm256_movemask_pd(_mm256_cmp_pd(vbound, m, _CMP_LT_OQ)) != 0) return true;
    }
    for (; z < n; ++z) {
        if (bound < lane_min(row_x[z], row_y[z])) return true;
    }
    return false;
}

void minimax_relax(std::span<double> row_i, std::span<const double> row_k, double d_ik) {
    assert(row_i.size() == row_k.size());
    const std::size_t n = row_i.size();
    const __m256d vd = _mm256_set1_pd(d_ik);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        __m256d cur = _mm256_loadu_pd(row_i.data() + j);
        __m256d via = _mm256_max_pd(vd, _mm256_loadu_pd(row_k.data() + j));
        _mm256_storeu_pd(row_i.data() + j, _mm256_min_pd(cur, via));
    }
    for (; j < n; ++j) row_i[j] = lane_min(row_i[j], lane_max(d_ik, row_k[j]));
}

void gromov_row(std::span<double> out, std::span<const double> h_base, std::span<const double> h_a,
                double t, double m_a) {
    assert(out.size() == h_base.size() && out.size() == h_a.size());
    const std::size_t n = out.size();
    const double lead = t - m_a;
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d vlead = _mm256_set1_pd(lead);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        __m256d m = _mm256_min_pd(vt, _mm256_loadu_pd(h_base.data() + j));
        __m256d g = _mm256_add_pd(_mm256_sub_pd(vlead, m), _mm256_loadu_pd(h_a.data() + j));
        _mm256_storeu_pd(out.data() + j, g);
    }
    for (; j < n; ++j) out[j] = (lead - lane_min(t, h_base[j])) + h_a[j];
}

void tree_distance_row(std::span<double> out, std::span<const double> t, std::span<const double> h,
                       double t_p) {
    assert(out.size() == t.size() && out.size() == h.size());
    const std::size_t n = out.size();
    const __m256d vtp = _mm256_set1_pd(t_p);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
        __m256d vt = _mm256_loadu_pd(t.data() + j);
        __m256d m = _mm256_min_pd(_mm256_min_pd(vtp, vt), _mm256_loadu_pd(h.data() + j));
        __m256d d = _mm256_sub_pd(_mm256_add_pd(vtp, vt), _mm256_mul_pd(two, m));
        _mm256_storeu_pd(out.data() + j, d);
    }
    for (; j < n; ++j) {
        double m = lane_min(lane_min(t_p, t[j]), h[j]);
        out[j] = (t_p + t[j]) - 2.0 * m;
    }
}

}  // namespace
}  // namespace impl

namespace detail {
const KernelTable avx2_table{&impl::ultrametric_violation, &impl::minimax_relax, &impl::gromov_row,
                                 &impl::tree_distance_row};
}

}  // namespace ultratree::kernels
