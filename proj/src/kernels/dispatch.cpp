#include <atomic>
#include <cstdlib>
#include <cstring>

#include "unitsum/kernels.hpp"

namespace unitsum::kernels {

namespace {
std::atomic<int> forced{-1};
}

bool avx2_supported() {
#if defined(UNITSUM_WITH_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
#else
    return false;
#endif
}

Isa active_isa() {
    const int f = forced.load(std::memory_order_relaxed);
    if (f == static_cast<int>(Isa::scalar)) return Isa::scalar;
    static const bool env_scalar = [] {
        const char* env = std::getenv("UNITSUM_KERNELS");
        return env && std::strcmp(env, "scalar") == 0;
    }();
    if (f == -1 && env_scalar) return Isa::scalar;
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

void force_isa(Isa isa) { forced.store(static_cast<int>(isa), std::memory_order_relaxed); }
void reset_isa() { forced.store(-1, std::memory_order_relaxed); }

std::size_t scan_row(const RowQuery& q, long count, long* out) {
#if defined(UNITSUM_WITH_AVX2)
    if (active_isa() == Isa::avx2) return scan_row_avx2(q, count, out);
#endif
    return scan_row_scalar(q, count, out);
}

void polygon_contains_batch(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes, int nplanes,
                            double slack, std::uint8_t* out) {
#if defined(UNITSUM_WITH_AVX2)
    if (active_isa() == Isa::avx2) return polygon_contains_batch_avx2(xs, ys, n, planes, nplanes, slack, out);
#endif
    polygon_contains_batch_scalar(xs, ys, n, planes, nplanes, slack, out);
}

}  // namespace unitsum::kernels
