#include "unitsum/kernels.hpp"

namespace unitsum::kernels {

namespace {
inline bool inside(double x, double y, const HalfPlane* planes, int nplanes, double slack) {
    for (int p = 0; p < nplanes; ++p) {
        const double t = planes[p].a * x + planes[p].b * y;
        if (t - planes[p].c > slack) return false;
    }
    return true;
}
}  // namespace

std::size_t scan_row_scalar(const RowQuery& q, long count, long* out) {
    std::size_t n = 0;
    for (long k = 0; k < count; ++k) {
        const double kd = static_cast<double>(k);
        const double x = q.base[0] + kd * q.step[0];
        const double y = q.base[1] + kd * q.step[1];
        const double u = q.base[2] + kd * q.step[2];
        const double v = q.base[3] + kd * q.step[3];
        const double r2 = u * u + v * v;
        if (r2 > q.radius2) continue;
        if (!inside(x, y, q.planes, q.nplanes, q.slack)) continue;
        out[n++] = k;
    }
    return n;
}

void polygon_contains_batch_scalar(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes,
                                   int nplanes, double slack, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = inside(xs[i], ys[i], planes, nplanes, slack) ? 1 : 0;
}

}  // namespace unitsum::kernels
