#include <atomic>
#include <string>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

namespace ultratree::kernels {
namespace {

Backend detect() noexcept {
#if defined(ULTRATREE_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
#if defined(ULTRATREE_HAVE_NEON)
    return Backend::neon;
#endif
    return Backend::scalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(ULTRATREE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(ULTRATREE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() noexcept {
    static const Backend detected = detect();
    int forced = g_forced.load(std::memory_order_relaxed);
    return forced < 0 ? detected : static_cast<Backend>(forced);
}

void force_backend(Backend b) {
    if (!backend_available(b))
        throw DomainError("kernel backend " + std::string(backend_name(b)) + " is not available");
    g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() noexcept { g_forced.store(-1, std::memory_order_relaxed); }

const KernelTable& table(Backend b) {
    switch (b) {
        case Backend::scalar: return detail::scalar_table;
#if defined(ULTRATREE_HAVE_AVX2)
        case Backend::avx2:
            if (backend_available(b)) return detail::avx2_table;
            break;
#endif
#if defined(ULTRATREE_HAVE_NEON)
        case Backend::neon: return detail::neon_table;
#endif
        default: break;
    }
    throw DomainError("kernel backend " + std::string(backend_name(b)) + " is not available");
}

}  // namespace ultratree::kernels
