#include "unitsum/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "unitsum/numerics.hpp"

namespace unitsum {

const char* to_string(Membership m) {
    switch (m) {
        case Membership::inside:
            return "inside";
        case Membership::outside:
            return "outside";
        case Membership::borderline:
            return "borderline";
    }
    return "?";
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::square:
            return "square";
        case Criterion::hexagon:
            return "hexagon";
        case Criterion::parallelogram:
            return "parallelogram";
    }
    return "?";
}

const char* to_string(CoverStatus s) {
    switch (s) {
        case CoverStatus::covered:
            return "covered";
        case CoverStatus::not_covered:
            return "not_covered";
        case CoverStatus::borderline:
            return "borderline";
    }
    return "?";
}

namespace {

// (q - p) x (z - p)
Real cross(const Complex& p, const Complex& q, const Complex& z) {
    return (q.re - p.re) * (z.im - p.im) - (q.im - p.im) * (z.re - p.re);
}

Real polygon_area(const std::vector<Complex>& v) {
    const mpfr_prec_t bits = v.empty() ? Real::kDefaultBits : v.front().precision();
    Real a(0L, bits);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Complex& p = v[k];
        const Complex& q = v[(k + 1) % v.size()];
        a += p.re * q.im - q.re * p.im;
    }
    return a * Real(0.5, bits);
}

Complex centroid(const std::vector<Complex>& v) {
    const mpfr_prec_t bits = v.front().precision();
    Complex c{Real(0L, bits), Real(0L, bits)};
    for (const auto& p : v) c += p;
    const Real n(static_cast<long>(v.size()), bits);
    c.re /= n;
    c.im /= n;
    return c;
}

}  // namespace

void Region::finish() {
    if (vertices_.size() < 3) throw Error("region needs at least 3 vertices");
    const mpfr_prec_t bits = vertices_.front().precision();
    const Complex origin{Real(0L, bits), Real(0L, bits)};
    const Real margin = comparison_margin(bits);
    vertices_d_.clear();
    planes_.clear();
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Complex& p = vertices_[k];
        const Complex& q = vertices_[(k + 1) % vertices_.size()];
        const Complex& r = vertices_[(k + 2) % vertices_.size()];
        if (!(cross(p, q, r) > margin)) throw Error("region is not strictly convex and counterclockwise");
        if (!(cross(p, q, origin) > margin)) throw Error("region does not contain 0 in its interior");
        vertices_d_.push_back(p.to_complex());
        const Real dx = q.re - p.re;
        const Real dy = q.im - p.im;
        const Real len = sqrt(dx * dx + dy * dy);
        const Real a = dy / len;
        const Real b = -dx / len;
        const Real c = a * p.re + b * p.im;
        planes_.push_back({a.to_double(), b.to_double(), c.to_double()});
    }
}

Region Region::square(mpfr_prec_t bits) {
    Region r;
    r.kind_ = RegionKind::square;
    const Real h(0.5, bits);
    r.vertices_ = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
    r.finish();
    return r;
}

Region Region::hexagon(mpfr_prec_t bits) {
    Region r;
    r.kind_ = RegionKind::hexagon;
    const Real scale = Real(1L, bits) / sqrt(Real(3L, bits));
    const Real p = pi(bits);
    for (long k = 0; k < 6; ++k) {
        const Real ang = p * Real(2 * k + 1, bits) / Real(6L, bits);
        r.vertices_.push_back({cos(ang) * scale, sin(ang) * scale});
    }
    r.finish();
    return r;
}

Region Region::parallelogram(const Complex& t) {
    const mpfr_prec_t bits = t.precision();
    if (!(abs(t.im) > comparison_margin(bits))) throw Error("parallelogram needs a non-real generator");
    Region r;
    r.kind_ = RegionKind::parallelogram;
    const Real h(0.5, bits);
    const Complex one{Real(1L, bits), Real(0L, bits)};
    std::vector<Complex> v = {(one + t) * h, (t - one) * h, (-one - t) * h, (one - t) * h};
    if (t.im.sign() < 0) std::reverse(v.begin(), v.end());
    r.vertices_ = std::move(v);
    r.finish();
    return r;
}

Region Region::polygon(std::vector<Complex> vertices) {
    Region r;
    r.kind_ = RegionKind::polygon;
    r.vertices_ = std::move(vertices);
    r.finish();
    return r;
}

Region Region::scaled(const Complex& s) const {
    Region r = *this;
    for (auto& v : r.vertices_) v = v * s;
    r.finish();
    return r;
}

Region Region::translated(const Complex& s) const {
    // a translate need not contain 0, so skip the interior check
    Region r = *this;
    for (auto& v : r.vertices_) v += s;
    r.vertices_d_.clear();
    for (const auto& v : r.vertices_) r.vertices_d_.push_back(v.to_complex());
    r.planes_.clear();
    return r;
}

Real Region::area() const { return polygon_area(vertices_); }

Membership membership(const Complex& z, const Region& r) {
    const auto& v = r.vertices();
    const mpfr_prec_t bits = std::max(z.precision(), r.precision());
    const Real margin = comparison_margin(bits);
    bool border = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Complex& p = v[k];
        const Complex& q = v[(k + 1) % v.size()];
        const Real len = (q - p).abs();
        const Real d = cross(p, q, z) / len;  // signed distance, positive inside
        if (d < -margin) return Membership::outside;
        if (d <= margin) border = true;
    }
    return border ? Membership::borderline : Membership::inside;
}

Membership membership(const Complex& z, const Region& r, const Complex& scale) { return membership(z / scale, r); }

namespace {

CoveringVerdict verdict(int w, std::vector<Real> values, Real lhs, Real rhs) {
    CoveringVerdict v;
    v.w = w;
    v.margin = comparison_margin(lhs.precision());
    v.borderline = abs(lhs - rhs) <= v.margin;
    v.pass = lhs <= rhs + v.margin;
    v.criterion_values = std::move(values);
    v.lhs = std::move(lhs);
    v.rhs = std::move(rhs);
    return v;
}

}  // namespace

CoveringVerdict square_criterion(const Complex& eps, int w) {
    const mpfr_prec_t bits = eps.precision();
    const Real h(0.5, bits);
    const Complex eta = eps * Complex{h, h};
    Real lhs = max(abs(eta.re), abs(eta.im));
    Real rhs = Real(static_cast<long>(1 + 2 * w), bits) * h;
    return verdict(w, {eta.re, eta.im}, std::move(lhs), std::move(rhs));
}

CoveringVerdict hexagon_criterion(const Complex& eps, int w) {
    const mpfr_prec_t bits = eps.precision();
    const Region hex = Region::hexagon(bits);
    std::vector<Real> values;
    Real lhs(0L, bits);
    for (const auto& v : hex.vertices()) {
        const Complex eta = eps * v;
        values.push_back(eta.im);
        lhs = max(lhs, abs(eta.im));
    }
    Real rhs = Real(static_cast<long>(5 * w + 2), bits) / (Real(2L, bits) * sqrt(Real(3L, bits)));
    return verdict(w, std::move(values), std::move(lhs), std::move(rhs));
}

CoveringVerdict parallelogram_criterion(const Complex& t, int w) {
    const mpfr_prec_t bits = t.precision();
    if (!(abs(t.im) > comparison_margin(bits))) throw Error("parallelogram criterion needs Im(eps~) != 0");
    const Real h(0.5, bits);
    const Complex one{Real(1L, bits), Real(0L, bits)};
    const Complex half_sq = t * t * h;
    std::vector<Real> values;
    Real lhs(0L, bits);
    for (const Complex& v : {half_sq * (one + t), half_sq * (one - t)}) {
        // solve a + b t = v
        Real b = v.im / t.im;
        Real a = v.re - b * t.re;
        lhs = max(lhs, max(abs(a), abs(b)));
        values.push_back(a);
        values.push_back(b);
    }
    Real rhs = Real(static_cast<long>(1 + 2 * w), bits) * h;
    return verdict(w, std::move(values), std::move(lhs), std::move(rhs));
}

Criterion criterion_for(const FieldDescriptor& f) {
    switch (f.region) {
        case RegionKind::square:
            return Criterion::square;
        case RegionKind::hexagon:
            return Criterion::hexagon;
        case RegionKind::parallelogram:
            return Criterion::parallelogram;
        default:
            throw Error("field " + f.id + " has no covering criterion");
    }
}

CoveringVerdict apply_criterion(Criterion c, const Complex& z, int w) {
    switch (c) {
        case Criterion::square:
            return square_criterion(z, w);
        case Criterion::hexagon:
            return hexagon_criterion(z, w);
        case Criterion::parallelogram:
            return parallelogram_criterion(z, w);
    }
    throw Error("unknown criterion");
}

MinimalW minimal_w(const CatalogEntry& entry, Criterion criterion, std::optional<std::size_t> only) {
    if (criterion == Criterion::square && entry.field.mu % 4 != 0) throw Error("square criterion needs fourth roots of unity");
    if (criterion == Criterion::hexagon && entry.field.mu % 6 != 0) throw Error("hexagon criterion needs sixth roots of unity");
    MinimalW best;
    bool any = false;
    for (std::size_t k = 0; k < entry.units.size(); ++k) {
        std::optional<int> found;
        if (!only || *only == k) {
            const UnitData& u = entry.units[k];
            const Complex z = embed(u.unit, u.embedding, u.embedding.chosen_index);
            for (int w = 1; w <= kMaxW; ++w) {
                if (apply_criterion(criterion, z, w).pass) {
                    found = w;
                    break;
                }
            }
        }
        best.per_embedding.push_back(found);
        if (found && (!any || *found < best.w)) {
            best.w = *found;
            best.embedding = k;
            any = true;
        }
    }
    if (!any) throw Error("no w <= " + std::to_string(kMaxW) + " passes the " + to_string(criterion) + " criterion for " + entry.field.id);
    return best;
}

namespace {

using Poly = std::vector<Complex>;

// keeps the part of `poly` where side * cross(p, q, z) >= 0
Poly clip(const Poly& poly, const Complex& p, const Complex& q, int side) {
    Poly out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    std::vector<Real> d;
    d.reserve(n);
    for (const auto& z : poly) d.push_back(side > 0 ? cross(p, q, z) : -cross(p, q, z));
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& a = poly[k];
        const Complex& b = poly[(k + 1) % n];
        const Real& da = d[k];
        const Real& db = d[(k + 1) % n];
        if (da.sign() >= 0) out.push_back(a);
        if ((da.sign() > 0 && db.sign() < 0) || (da.sign() < 0 && db.sign() > 0)) {
            const Real t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

struct Box {
    double x0, x1, y0, y1;
};

Box bbox(const Poly& p) {
    Box b{1e300, -1e300, 1e300, -1e300};
    for (const auto& z : p) {
        const double x = z.re.to_double(), y = z.im.to_double();
        b.x0 = std::min(b.x0, x);
        b.x1 = std::max(b.x1, x);
        b.y0 = std::min(b.y0, y);
        b.y1 = std::max(b.y1, y);
    }
    return b;
}

bool overlap(const Box& a, const Box& b) {
    const double e = 1e-12;
    return a.x0 <= b.x1 + e && b.x0 <= a.x1 + e && a.y0 <= b.y1 + e && b.y0 <= a.y1 + e;
}

}  // namespace

CoverageResult cover(const Region& target, const std::vector<Complex>& translates, const Region& tile) {
    const mpfr_prec_t bits = target.precision();
    const Real drop = exp2(-static_cast<long>(bits) / 2, bits) * tile.area();
    std::vector<Poly> pieces{target.vertices()};
    // deterministic order: by real part, then imaginary part
    std::vector<Complex> order = translates;
    std::sort(order.begin(), order.end(), [](const Complex& a, const Complex& b) {
        if (a.re < b.re) return true;
        if (b.re < a.re) return false;
        return a.im < b.im;
    });
    for (const auto& s : order) {
        Poly q;
        for (const auto& v : tile.vertices()) q.push_back(v + s);
        const Box qb = bbox(q);
        std::vector<Poly> next;
        for (auto& piece : pieces) {
            if (!overlap(bbox(piece), qb)) {
                next.push_back(std::move(piece));
                continue;
            }
            Poly rest = piece;
            for (std::size_t k = 0; k < q.size() && rest.size() >= 3; ++k) {
                const Complex& a = q[k];
                const Complex& b = q[(k + 1) % q.size()];
                Poly out = clip(rest, a, b, -1);
                if (out.size() >= 3 && abs(polygon_area(out)) > drop) next.push_back(std::move(out));
                rest = clip(rest, a, b, +1);
            }
        }
        pieces = std::move(next);
    }
    CoverageResult r;
    r.residual_area = Real(0L, bits);
    r.pieces = pieces.size();
    const Poly* largest = nullptr;
    Real largest_area(0L, bits);
    for (const auto& p : pieces) {
        const Real a = abs(polygon_area(p));
        r.residual_area += a;
        if (!largest || a > largest_area) {
            largest = &p;
            largest_area = a;
        }
    }
    const Real tile_area = tile.area();
    const Real covered_tol = Real(1e-20, bits) * tile_area;
    const Real border_tol = Real(1e-14, bits) * tile_area;
    if (r.residual_area <= covered_tol) {
        r.status = CoverStatus::covered;
    } else {
        r.status = r.residual_area <= border_tol ? CoverStatus::borderline : CoverStatus::not_covered;
        if (largest) r.witness = centroid(*largest);
    }
    return r;
}

CoverageResult verify_covering_exact(const Complex& eps, const std::vector<Complex>& alphabet_points, const Region& r) {
    return cover(r.scaled(eps), alphabet_points, r);
}

}  // namespace unitsum
