#pragma once

#include <cstddef>
#include <cstdint>

namespace unitsum::kernels {

/// Interior side of an edge: a*x + b*y <= c, with (a, b) of unit length.
struct HalfPlane {
    double a = 0;
    double b = 0;
    double c = 0;
};

/// One row of the lattice box scan: the points base + k*step for k in [0, count).
/// A point passes when its first complex coordinate lies in the polygon (each
/// plane violated by at most `slack`) and its second has squared modulus <= radius2.
struct RowQuery {
    double base[4];
    double step[4];
    const HalfPlane* planes;
    int nplanes;
    double slack;
    double radius2;
};

enum class Isa { scalar, avx2 };

bool avx2_supported();
Isa active_isa();
/// Pins dispatch to one variant; avx2 silently falls back when unsupported.
void force_isa(Isa isa);
void reset_isa();

/// Writes passing offsets k to out (capacity count) and returns how many passed.
std::size_t scan_row(const RowQuery& q, long count, long* out);
/// out[i] = 1 when (xs[i], ys[i]) is inside the polygon up to slack.
void polygon_contains_batch(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes, int nplanes,
                            double slack, std::uint8_t* out);

std::size_t scan_row_scalar(const RowQuery& q, long count, long* out);
void polygon_contains_batch_scalar(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes,
                                   int nplanes, double slack, std::uint8_t* out);

#if defined(UNITSUM_WITH_AVX2)
std::size_t scan_row_avx2(const RowQuery& q, long count, long* out);
void polygon_contains_batch_avx2(const double* xs, const double* ys, std::size_t n, const HalfPlane* planes,
                                 int nplanes, double slack, std::uint8_t* out);
#endif

}  // namespace unitsum::kernels
