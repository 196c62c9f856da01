#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "unitsum/catalog.hpp"
#include "unitsum/kernels.hpp"
#include "unitsum/real.hpp"

namespace unitsum {

enum class Membership { inside, outside, borderline };
const char* to_string(Membership m);

/// Convex polygon with vertices listed counterclockwise and 0 strictly inside.
class Region {
public:
    Region() = default;
    static Region square(mpfr_prec_t bits);
    static Region hexagon(mpfr_prec_t bits);
    /// Vertices (+-1 +- t)/2; throws Error when Im(t) is numerically zero.
    static Region parallelogram(const Complex& t);
    /// Throws Error unless the polygon is convex and contains 0 strictly.
    static Region polygon(std::vector<Complex> vertices);

    RegionKind kind() const { return kind_; }
    const std::vector<Complex>& vertices() const { return vertices_; }
    const std::vector<std::complex<double>>& vertices_approx() const { return vertices_d_; }
    /// Unit-normal half-planes a x + b y <= c describing the interior.
    const std::vector<kernels::HalfPlane>& half_planes() const { return planes_; }
    mpfr_prec_t precision() const { return vertices_.front().precision(); }

    Region scaled(const Complex& s) const;
    Region translated(const Complex& s) const;
    Real area() const;

private:
    RegionKind kind_ = RegionKind::polygon;
    std::vector<Complex> vertices_;
    std::vector<std::complex<double>> vertices_d_;
    std::vector<kernels::HalfPlane> planes_;

    void finish();
};

/// Tests z in scale * P with the module-wide margin.
Membership membership(const Complex& z, const Region& r, const Complex& scale);
Membership membership(const Complex& z, const Region& r);

struct CoveringVerdict {
    int w = 0;
    bool pass = false;
    bool borderline = false;
    std::vector<Real> criterion_values;
    Real lhs;
    Real rhs;
    Real margin;
};

CoveringVerdict square_criterion(const Complex& eps, int w);
CoveringVerdict hexagon_criterion(const Complex& eps, int w);
CoveringVerdict parallelogram_criterion(const Complex& eps_tilde, int w);

enum class Criterion { square, hexagon, parallelogram };
const char* to_string(Criterion c);
/// Criterion matching the region kind of a catalog field.
Criterion criterion_for(const FieldDescriptor& f);
CoveringVerdict apply_criterion(Criterion c, const Complex& unit_embedded, int w);

struct MinimalW {
    int w = 0;
    std::size_t embedding = 0;
    std::vector<std::optional<int>> per_embedding;
};

constexpr int kMaxW = 8;

/// Smallest w in [1, kMaxW] passing the criterion under some stored embedding, or the
/// embedding given explicitly. Throws Error if none passes.
MinimalW minimal_w(const CatalogEntry& entry, Criterion criterion, std::optional<std::size_t> only = std::nullopt);

enum class CoverStatus { covered, not_covered, borderline };
const char* to_string(CoverStatus s);

struct CoverageResult {
    CoverStatus status = CoverStatus::covered;
    Real residual_area;
    std::optional<Complex> witness;
    std::size_t pieces = 0;
};

/// Decides target subset of union(s + tile) by subtracting translates from convex pieces.
CoverageResult cover(const Region& target, const std::vector<Complex>& translates, const Region& tile);

/// The covering condition eps*P subset union_{s}(s + P).
CoverageResult verify_covering_exact(const Complex& eps, const std::vector<Complex>& alphabet_points, const Region& r);

}  // namespace unitsum
