#include "unitsum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "unitsum/kernels.hpp"

namespace unitsum {

std::optional<std::size_t> DigitAlphabet::index_of(const Coords& c) const {
    const auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

namespace {

void finish_alphabet(DigitAlphabet& a, const FieldDescriptor& field, const UnitData& unit) {
    const EmbeddingData& e = unit.embedding;
    const Embedder main(*field.order, e.roots[static_cast<std::size_t>(e.chosen_index)]);
    const Embedder other(*field.order, e.roots[static_cast<std::size_t>(e.other_index())]);
    a.conj_bound = Real(0L, e.precision_bits);
    a.main_bound = Real(0L, e.precision_bits);
    for (std::size_t k = 0; k < a.elements.size(); ++k) {
        a.index.emplace(a.elements[k].coords(), k);
        a.conj_bound = max(a.conj_bound, other(a.elements[k].coords()).abs());
        a.main_bound = max(a.main_bound, main(a.elements[k].coords()).abs());
    }
}

}  // namespace

DigitAlphabet build_alphabet(const FieldDescriptor& field, const UnitData& unit, int w) {
    if (w < 0) throw Error("alphabet width must be non-negative");
    DigitAlphabet a;
    a.w = w;
    a.mu = field.mu;
    if (field.mu > 2) {
        if (!field.zeta) throw Error("field " + field.id + " has no root of unity");
        a.kind = AlphabetKind::roots_of_unity;
        const int mu = field.mu;
        std::vector<Coords> zp;
        OrderElement p = *field.zeta;
        for (int i = 1; i <= mu; ++i, p = p * *field.zeta) zp.push_back(p.coords());
        // enumerate tuples; keep the canonical decomposition of each value
        std::map<Coords, std::vector<int>> best;
        std::vector<int> d(static_cast<std::size_t>(mu), 0);
        auto better = [](const std::vector<int>& x, const std::vector<int>& y) {
            int sx = 0, sy = 0;
            for (int v : x) sx += v;
            for (int v : y) sy += v;
            return sx != sy ? sx < sy : x < y;
        };
        while (true) {
            Coords c = zero_coords();
            for (int i = 0; i < mu; ++i) {
                const int di = d[static_cast<std::size_t>(i)];
                if (di == 0) continue;
                for (std::size_t k = 0; k < 4; ++k) c[k] += zp[static_cast<std::size_t>(i)][k] * di;
            }
            auto it = best.find(c);
            if (it == best.end())
                best.emplace(c, d);
            else if (better(d, it->second))
                it->second = d;
            int i = mu - 1;
            while (i >= 0 && d[static_cast<std::size_t>(i)] == w) d[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++d[static_cast<std::size_t>(i)];
        }
        std::vector<std::pair<std::vector<int>, Coords>> items;
        for (auto& [c, dec] : best) items.emplace_back(dec, c);
        std::sort(items.begin(), items.end(), [&](const auto& x, const auto& y) { return better(x.first, y.first); });
        for (auto& [dec, c] : items) {
            a.elements.emplace_back(field.order, c);
            a.decompositions.push_back(dec);
        }
    } else {
        a.kind = AlphabetKind::affine_pair;
        std::vector<std::pair<int, int>> pairs;
        for (int d0 = -w; d0 <= w; ++d0)
            for (int d1 = -w; d1 <= w; ++d1) pairs.emplace_back(d0, d1);
        std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
            const int sx = std::abs(x.first) + std::abs(x.second), sy = std::abs(y.first) + std::abs(y.second);
            return sx != sy ? sx < sy : x < y;
        });
        const OrderElement one = OrderElement::one(field.order);
        for (const auto& [d0, d1] : pairs) {
            a.elements.push_back(one * Integer(d0) + unit.unit * Integer(d1));
            a.decompositions.push_back({d0, d1});
        }
    }
    finish_alphabet(a, field, unit);
    return a;
}

LatticeEmbedding LatticeEmbedding::make(const Order& order, const EmbeddingData& e) {
    const mpfr_prec_t bits = e.precision_bits;
    const Embedder main(order, e.roots[static_cast<std::size_t>(e.chosen_index)]);
    const Embedder other(order, e.roots[static_cast<std::size_t>(e.other_index())]);
    LatticeEmbedding L;
    for (std::size_t j = 0; j < 4; ++j) {
        const Complex& a = main.basis_images()[j];
        const Complex& b = other.basis_images()[j];
        L.matrix[0][j] = a.re;
        L.matrix[1][j] = a.im;
        L.matrix[2][j] = b.re;
        L.matrix[3][j] = b.im;
    }
    // Gauss-Jordan with partial pivoting
    auto m = L.matrix;
    std::array<std::array<Real, 4>, 4> inv;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) inv[i][j] = Real(i == j ? 1L : 0L, bits);
    Real det(1L, bits);
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 4; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (!(abs(m[piv][c]) > comparison_margin(bits))) throw Error("Minkowski matrix is singular");
        if (piv != c) {
            std::swap(m[piv], m[c]);
            std::swap(inv[piv], inv[c]);
            det = -det;
        }
        det *= m[c][c];
        const Real p = m[c][c];
        for (std::size_t k = 0; k < 4; ++k) {
            m[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == c || m[r][c].sign() == 0) continue;
            const Real f = m[r][c];
            for (std::size_t k = 0; k < 4; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    L.inverse = inv;
    L.determinant = det;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            L.matrix_d[i][j] = L.matrix[i][j].to_double();
            L.inverse_d[i][j] = L.inverse[i][j].to_double();
        }
    return L;
}

CriticalSet enumerate_critical_points(const FieldDescriptor& field, const UnitData& unit, const OrderElement& base,
                                      const DigitAlphabet& alphabet, const Region& region, double inflate) {
    const EmbeddingData& e = unit.embedding;
    const mpfr_prec_t bits = e.precision_bits;
    const Embedder main(*field.order, e.roots[static_cast<std::size_t>(e.chosen_index)]);
    const Embedder other(*field.order, e.roots[static_cast<std::size_t>(e.other_index())]);
    const Real base2 = other(base.coords()).abs();
    const Real one(1L, bits);
    if (!(base2 < one)) throw Error("expansion base is not contracting under the second embedding");

    CriticalSet out;
    out.radius = alphabet.conj_bound / (one - base2);
    const Real margin = comparison_margin(bits);
    const Real radius = out.radius + Real(inflate, bits);
    const double R = radius.to_double();

    const LatticeEmbedding L = LatticeEmbedding::make(*field.order, e);
    std::array<long, 4> lo{}, hi{};
    double volume = 1;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& row = L.inverse_d[k];
        double mx = -1e300, mn = 1e300;
        for (const auto& v : region.vertices_approx()) {
            const double t = row[0] * v.real() + row[1] * v.imag();
            mx = std::max(mx, t);
            mn = std::min(mn, t);
        }
        const double disk = R * std::hypot(row[2], row[3]);
        const double pad = 1e-6 * (1 + std::abs(mx) + std::abs(mn) + disk);
        lo[k] = static_cast<long>(std::floor(mn - disk - pad));
        hi[k] = static_cast<long>(std::ceil(mx + disk + pad));
        volume *= static_cast<double>(hi[k] - lo[k] + 1);
    }
    if (volume > kMaxBoxPoints) throw Error("critical point box too large for " + field.id);
    out.box_points = static_cast<std::size_t>(volume);

    const auto& M = L.matrix_d;
    kernels::RowQuery q{};
    q.planes = region.half_planes().data();
    q.nplanes = static_cast<int>(region.half_planes().size());
    q.slack = 1e-7;
    const double rs = R * (1 + 1e-9) + 1e-7;
    q.radius2 = rs * rs;
    for (std::size_t i = 0; i < 4; ++i) q.step[i] = M[i][3];
    const long count = hi[3] - lo[3] + 1;
    std::vector<long> hits(static_cast<std::size_t>(count));

    const Real r_hi = radius + margin;
    const Real r_lo = radius - margin;
    std::vector<std::pair<Coords, bool>> found;
    for (long a = lo[0]; a <= hi[0]; ++a)
        for (long b = lo[1]; b <= hi[1]; ++b)
            for (long c = lo[2]; c <= hi[2]; ++c) {
                for (std::size_t i = 0; i < 4; ++i)
                    q.base[i] = M[i][0] * double(a) + M[i][1] * double(b) + M[i][2] * double(c) + M[i][3] * double(lo[3]);
                const std::size_t n = kernels::scan_row(q, count, hits.data());
                for (std::size_t h = 0; h < n; ++h) {
                    ++out.candidates;
                    const Coords co{Integer(a), Integer(b), Integer(c), Integer(lo[3] + hits[h])};
                    const Membership m = membership(main(co), region);
                    if (m == Membership::outside) continue;
                    const Real r2 = other(co).abs();
                    if (r2 > r_hi) continue;
                    const bool border = m == Membership::borderline || r2 >= r_lo;
                    found.emplace_back(co, border);
                }
            }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [co, border] : found) {
        if (is_zero(co)) {
            out.contains_zero = true;
            continue;
        }
        out.points.emplace_back(field.order, co);
        out.borderline.push_back(border);
    }
    return out;
}

}  // namespace unitsum
