#include <immintrin.h>

#include "unitsum/kernels.hpp"

namespace unitsum::kernels {

namespace {
// all-ones lanes where every plane holds; same operation order as the scalar path
inline __m256d inside4(__m256d x, __m256d y, const HalfPlane* planes, int nplanes, __m256d slack) {
    __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int p = 0; p < nplanes; ++p) {
        const __m256d t = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(planes[p].a), x),
                                        _mm256_mul_pd(_mm256_set1_pd(planes[p].b), y));
        const __m256d d = _mm256_sub_pd(t, _mm256_set1_pd(planes[p].c));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(d, slack, _CMP_LE_OQ));
    }
    return ok;
}
}  // namespace

std::size_t scan_row_avx2(const RowQuery& q, long count, long* out) {
    std::size_t n = 0;
    const __m256d slack = _mm256_set1_pd(q.slack);
    const __m256d r2max = _mm256_set1_pd(q.radius2);
    __m256d b[4], s[4];
    for (int i = 0; i < 4; ++i) {
        b[i] = _mm256_set1_pd(q.base[i]);
        s[i] = _mm256_set1_pd(q.step[i]);
    }
    long k = 0;
    for (; k + 4 <= count; k += 4) {
        const double k0 = static_cast<double>(k);
        const __m256d kd = _mm256_set_pd(k0 + 3, k0 + 2, k0 + 1, k0);
        const __m256d x = _mm256_add_pd(b[0], _mm256_mul_pd(kd, s[0]));
        const __m256d y = _mm256_add_pd(b[1], _mm256_mul_pd(kd, s[1]));
        const __m256d u = _mm256_add_pd(b[2], _mm256_mul_pd(kd, s[2]));
        const __m256d v = _mm256_add_pd(b[3], _mm256_mul_pd(kd, s[3]));
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(u, u), _mm256_mul_pd(v, v));
        __m256d ok = _mm256_cmp_pd(r2, r2max, _CMP_LE_OQ);
        if (_mm256_movemask_pd(ok) == 0) continue;
        ok = _mm256_and_pd(ok, inside4(x, y, q.planes, q.nplanes, slack));
        int mask = _mm256_movemask_pd(ok);
        while (mask) {
            const int lane = __builtin_ctz(static_cast<unsigned>(mask));
            out[n++] = k + lane;
            mask &= mask - 1;
        }
    }
    // tail point by point with the global offset, matching the scalar arithmetic
    for (; k < count; ++k) {
        const double kk = static_cast<double>(k);
        const double x = q.base[0] + kk * q.step[0];
        const double y = q.base[1] + kk * q.step[1];
        const double u = q.base[2] + kk * q.step[2];
        const double v = q.base[3] + kk * q.step[3];
        if (u * u + v * v > q.radius2) continue;
        bool in = true;
        for (int p = 0; p < q.nplanes && in; ++p) {
            const double t = q.planes[p].a * x + q.planes[p].b * y;
            if (t - q.planes[p].c > q.slack) in = false;
        }
        if (in) out[n++] = k;
    }
    return n;
}

void polygon_contains_batch_avx2(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes,
                                 int nplanes, double slack, std::uint8_t* out) {
    const __m256d sl = _mm256_set1_pd(slack);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ok = inside4(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i), planes, nplanes, sl);
        const int mask = _mm256_movemask_pd(ok);
        for (int lane = 0; lane < 4; ++lane) out[i + static_cast<std::size_t>(lane)] = (mask >> lane) & 1;
    }
    if (i < n) polygon_contains_batch_scalar(xs + i, ys + i, n - i, planes, nplanes, slack, out + i);
}

}  // namespace unitsum::kernels
