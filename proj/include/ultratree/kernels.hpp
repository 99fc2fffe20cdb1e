#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops over rows of height matrices. Every kernel has a
// scalar reference version and vectorized variants; the dispatcher picks the
// widest one the running CPU supports. All variants perform the same IEEE
// operations in the same order per lane, so results are bit-identical.

namespace ultratree::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;

/// Backend used by the dispatching entry points below.
Backend active_backend() noexcept;

/// Overrides dispatch; throws DomainError when `b` is unavailable on this CPU.
void force_backend(Backend b);

/// Restores CPU-detected dispatch.
void reset_backend() noexcept;

// Signatures shared by every backend.
//
// ultrametric_violation: true iff some z has h_xy + slack < min(row_x[z], row_y[z]).
// minimax_relax:         row_i[j] = min(row_i[j], max(d_ik, row_k[j])).
// gromov_row:            out[j] = (t - m_a) - min(t, h_base[j]) + h_a[j].
// tree_distance_row:     out[j] = (t_p + t[j]) - 2 * min(min(t_p, t[j]), h[j]).
struct KernelTable {
    bool (*ultrametric_violation)(std::span<const double> row_x, std::span<const double> row_y,
                                  double h_xy, double slack);
    void (*minimax_relax)(std::span<double> row_i, std::span<const double> row_k, double d_ik);
    void (*gromov_row)(std::span<double> out, std::span<const double> h_base,
                       std::span<const double> h_a, double t, double m_a);
    void (*tree_distance_row)(std::span<double> out, std::span<const double> t,
                              std::span<const double> h, double t_p);
};

/// Kernel table of a specific backend; throws DomainError if unavailable.
const KernelTable& table(Backend b);

inline bool ultrametric_violation(std::span<const double> row_x, std::span<const double> row_y,
                                  double h_xy, double slack) {
    return table(active_backend()).ultrametric_violation(row_x, row_y, h_xy, slack);
}

inline void minimax_relax(std::span<double> row_i, std::span<const double> row_k, double d_ik) {
    table(active_backend()).minimax_relax(row_i, row_k, d_ik);
}

inline void gromov_row(std::span<double> out, std::span<const double> h_base,
                       std::span<const double> h_a, double t, double m_a) {
    table(active_backend()).gromov_row(out, h_base, h_a, t, m_a);
}

inline void tree_distance_row(std::span<double> out, std::span<const double> t,
                              std::span<const double> h, double t_p) {
    table(active_backend()).tree_distance_row(out, t, h, t_p);
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(ULTRATREE_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(ULTRATREE_HAVE_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace ultratree::kernels
