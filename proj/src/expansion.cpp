#include "unitsum/expansion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <unordered_set>

#include "unitsum/kernels.hpp"
#include "unitsum/rewriting.hpp"

namespace unitsum {

bool FieldContext::is_critical(const Coords& c) const { return critical_index_.count(c) != 0; }

const OrderElement& FieldContext::base_power(std::size_t k) const {
    if (powers_.empty()) powers_.push_back(OrderElement::one(base.order()));
    while (powers_.size() <= k) powers_.push_back(powers_.back() * base);
    return powers_[k];
}

FieldContext make_context(const CatalogEntry& entry, std::optional<int> w, std::optional<std::size_t> embedding,
                          mpfr_prec_t bits) {
    const FieldDescriptor& f = entry.field;
    if (f.region == RegionKind::none || entry.units.empty())
        throw Error("field " + f.id + " is not analysed by digit expansion");
    FieldContext ctx;
    ctx.entry = &entry;
    ctx.criterion = criterion_for(f);
    if (embedding && *embedding >= entry.units.size()) throw Error("embedding index out of range for " + f.id);
    if (w) {
        if (*w < 1) throw Error("w must be positive");
        ctx.w = *w;
        if (embedding) {
            ctx.embedding = *embedding;
        } else {
            try {
                ctx.embedding = minimal_w(entry, ctx.criterion).embedding;
            } catch (const Error&) {
                ctx.embedding = 0;
            }
        }
    } else {
        const MinimalW m = minimal_w(entry, ctx.criterion, embedding);
        ctx.w = m.w;
        ctx.embedding = m.embedding;
    }
    ctx.unit = entry.units[ctx.embedding];
    if (bits != 0 && bits != ctx.unit.embedding.precision_bits)
        ctx.unit.embedding = find_roots(f.min_poly, bits).with_choice(ctx.unit.embedding.chosen_index);
    const EmbeddingData& e = ctx.unit.embedding;
    ctx.bits = e.precision_bits;
    ctx.base = ctx.unit.base();
    ctx.main = Embedder(*f.order, e.roots[static_cast<std::size_t>(e.chosen_index)]);
    ctx.other = Embedder(*f.order, e.roots[static_cast<std::size_t>(e.other_index())]);
    switch (f.region) {
        case RegionKind::square:
            ctx.region = Region::square(ctx.bits);
            break;
        case RegionKind::hexagon:
            ctx.region = Region::hexagon(ctx.bits);
            break;
        case RegionKind::parallelogram:
            ctx.region = Region::parallelogram(ctx.main(ctx.unit.unit.coords()));
            break;
        default:
            throw Error("field " + f.id + " has no supported region");
    }
    ctx.alphabet = build_alphabet(f, ctx.unit, ctx.w);
    ctx.critical = enumerate_critical_points(f, ctx.unit, ctx.base, ctx.alphabet, ctx.region);
    for (std::size_t k = 0; k < ctx.critical.points.size(); ++k) ctx.critical_index_.emplace(ctx.critical.points[k].coords(), k);
    return ctx;
}

bool ExpansionResult::verify(const FieldContext& ctx) const {
    const OrderElement lhs = alpha * ctx.base_power(static_cast<std::size_t>(N));
    OrderElement rhs = beta;
    const std::size_t n1 = digits.size();
    for (std::size_t k = 0; k < n1; ++k) rhs = rhs + ctx.alphabet.elements[digits[k]] * ctx.base_power(n1 - 1 - k);
    return lhs == rhs;
}

ExpansionResult greedy_expand(const OrderElement& alpha, const FieldContext& ctx, double delta) {
    if (!(delta > 0)) throw Error("delta must be positive");
    ExpansionResult res;
    res.alpha = alpha;
    res.delta = delta;
    const Real dl(delta, ctx.bits);
    const Real e2 = ctx.base_other().abs();
    Real a2 = ctx.other(alpha.coords()).abs();
    long N = 0;
    while (!(a2 < dl)) {
        a2 *= e2;
        if (++N > 100000) throw ConvergenceError("amplification exponent does not converge");
    }
    res.N = N;
    const OrderElement x = alpha * ctx.base_power(static_cast<std::size_t>(N));

    const Complex e1 = ctx.base_main();
    std::vector<Complex> pw{Complex(Real(1L, ctx.bits), Real(0L, ctx.bits))};
    Complex scaled = ctx.main(x.coords());
    long n = -1;
    while (membership(scaled, ctx.region) == Membership::outside) {
        scaled = scaled / e1;
        pw.push_back(pw.back() * e1);
        if (++n > 100000) throw ConvergenceError("top digit position does not converge");
    }

    const DigitAlphabet& A = ctx.alphabet;
    const std::size_t na = A.size();
    std::vector<std::complex<double>> sd(na);
    for (std::size_t k = 0; k < na; ++k) sd[k] = ctx.main.approx(A.elements[k].coords());
    std::vector<double> xs(na), ys(na);
    std::vector<std::uint8_t> ok(na);
    const auto& planes = ctx.region.half_planes();

    OrderElement r = x;
    for (long j = n; j >= 0; --j) {
        const std::complex<double> y = (ctx.main(r.coords()) / pw[static_cast<std::size_t>(j)]).to_complex();
        for (std::size_t k = 0; k < na; ++k) {
            xs[k] = y.real() - sd[k].real();
            ys[k] = y.imag() - sd[k].imag();
        }
        kernels::polygon_contains_batch(xs.data(), ys.data(), na, planes.data(), static_cast<int>(planes.size()), 1e-9,
                                        ok.data());
        std::optional<std::size_t> best;
        double best_d = 0;
        for (std::size_t k = 0; k < na; ++k) {
            if (!ok[k]) continue;
            const double d = std::hypot(xs[k], ys[k]);
            if (!best || d < best_d - 1e-12 ||
                (std::abs(d - best_d) <= 1e-12 && A.elements[k].coords() < A.elements[*best].coords())) {
                best = k;
                best_d = d;
            }
        }
        if (!best) throw ExpansionError(ExpansionError::Kind::covering_violated, "covering violated numerically");
        res.digits.push_back(*best);
        r = r - A.elements[*best] * ctx.base_power(static_cast<std::size_t>(j));
    }
    res.beta = r;
    if (!r.is_zero() && !ctx.is_critical(r.coords()))
        throw ExpansionError(ExpansionError::Kind::incomplete_critical_set, "critical set incomplete or delta too large");
    return res;
}

namespace {

OrderElement tilde_digit(const FieldContext& ctx, int e) { return OrderElement::one(ctx.base.order()) * Integer(e); }

/// Shortest digit sequence with x_0 = beta, x_k = x_(k-1) * b - s_k, x_depth = 0.
std::optional<std::vector<std::size_t>> search(const OrderElement& beta, const OrderElement& b,
                                               const std::vector<OrderElement>& digits, double bound_main,
                                               double bound_other, const FieldContext& ctx, int max_depth) {
    const Order& order = *beta.order();
    const auto mb = order.multiplication_matrix(b.coords());
    auto within = [&](const Coords& c) {
        return std::abs(ctx.main.approx(c)) <= bound_main && std::abs(ctx.other.approx(c)) <= bound_other;
    };
    std::vector<std::vector<Coords>> layers{{beta.coords()}};
    std::unordered_set<Coords, CoordsHash> seen{beta.coords()};
    int depth = 0;
    for (int d = 1; d <= max_depth && depth == 0; ++d) {
        std::vector<Coords> next;
        for (const Coords& x : layers.back()) {
            const Coords xb = Order::apply(mb, x);
            for (const auto& s : digits) {
                const Coords y = order.sub(xb, s.coords());
                if (is_zero(y)) {
                    depth = d;
                    continue;
                }
                if (depth == 0 && !seen.count(y) && within(y)) {
                    seen.insert(y);
                    next.push_back(y);
                }
            }
        }
        if (depth) break;
        if (next.empty()) return std::nullopt;
        layers.push_back(std::move(next));
    }
    if (depth == 0) return std::nullopt;

    // states from which 0 is reachable in exactly the remaining number of steps
    std::vector<std::unordered_set<Coords, CoordsHash>> good(static_cast<std::size_t>(depth) + 1);
    good[static_cast<std::size_t>(depth)].insert(zero_coords());
    for (int j = depth - 1; j >= 0; --j) {
        auto& g = good[static_cast<std::size_t>(j)];
        const auto& nextg = good[static_cast<std::size_t>(j) + 1];
        for (const Coords& x : layers[static_cast<std::size_t>(j)]) {
            const Coords xb = Order::apply(mb, x);
            for (const auto& s : digits)
                if (nextg.count(order.sub(xb, s.coords()))) {
                    g.insert(x);
                    break;
                }
        }
    }
    std::vector<std::size_t> out;
    Coords x = beta.coords();
    for (int j = 0; j < depth; ++j) {
        const Coords xb = Order::apply(mb, x);
        const auto& nextg = good[static_cast<std::size_t>(j) + 1];
        for (std::size_t k = 0; k < digits.size(); ++k) {
            const Coords y = order.sub(xb, digits[k].coords());
            if (nextg.count(y)) {
                out.push_back(k);
                x = y;
                break;
            }
        }
    }
    return out;
}

std::vector<int> tilde_digit_values(int w) {
    std::vector<int> v;
    for (int e = -w; e <= w; ++e) v.push_back(e);
    std::sort(v.begin(), v.end(), [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
    return v;
}

}  // namespace

bool CriticalPointReport::verify(const FieldContext& ctx) const {
    const std::size_t J = representation.size();
    OrderElement rhs = OrderElement::zero(point.order());
    for (std::size_t j = 1; j <= J; ++j) rhs = rhs + ctx.alphabet.elements[representation[j - 1]] * ctx.base_power(J - j);
    if (point * ctx.base_power(J) != rhs) return false;
    if (ctx.squared()) {
        const OrderElement& t = ctx.unit.unit;
        OrderElement acc = OrderElement::zero(point.order());
        for (int e : tilde_digits) acc = acc * t + tilde_digit(ctx, e);
        if (point * power(t, tilde_digits.size()) != acc) return false;
        if (static_cast<std::size_t>(depth) != tilde_digits.size()) return false;
    } else if (static_cast<std::size_t>(depth) != J) {
        return false;
    }
    return true;
}

CriticalPointReport represent_critical_point(const OrderElement& beta, const FieldContext& ctx, int max_depth) {
    if (beta.is_zero()) throw Error("zero has the empty representation");
    CriticalPointReport rep;
    rep.point = beta;
    const double beta2 = std::abs(ctx.other.approx(beta.coords()));
    const double slack = 1e-9;
    if (!ctx.squared()) {
        const double b1 = ctx.base_main().abs().to_double();
        const double b2 = ctx.base_other().abs().to_double();
        const double smax = ctx.alphabet.main_bound.to_double();
        const double c2 = ctx.alphabet.conj_bound.to_double();
        const double bm = smax / (b1 - 1) * (1 + slack) + slack;
        const double bo = (beta2 + c2 / (1 - b2)) * (1 + slack) + slack;
        const auto found = search(beta, ctx.base, ctx.alphabet.elements, bm, bo, ctx, max_depth);
        if (!found) throw RepresentationError("no representation of " + beta.to_string() + " within depth " + std::to_string(max_depth));
        rep.representation = *found;
        rep.depth = static_cast<int>(found->size());
        return rep;
    }
    const OrderElement& t = ctx.unit.unit;
    const double t1 = ctx.main(t.coords()).abs().to_double();
    const double t2 = ctx.other(t.coords()).abs().to_double();
    const std::vector<int> values = tilde_digit_values(ctx.w);
    std::vector<OrderElement> digits;
    for (int e : values) digits.push_back(tilde_digit(ctx, e));
    const double bm = ctx.w / (t1 - 1) * (1 + slack) + slack;
    const double bo = (beta2 + ctx.w / (1 - t2)) * (1 + slack) + slack;
    const auto found = search(beta, t, digits, bm, bo, ctx, max_depth);
    if (!found) throw RepresentationError("no representation of " + beta.to_string() + " within depth " + std::to_string(max_depth));
    for (std::size_t k : *found) rep.tilde_digits.push_back(values[k]);
    rep.depth = static_cast<int>(found->size());
    // pair e_(2j-1), e_(2j) into the alphabet digit e_(2j) + e_(2j-1) eps~
    const std::size_t J = (found->size() + 1) / 2;
    for (std::size_t j = 1; j <= J; ++j) {
        const int hi = rep.tilde_digits[2 * j - 2];
        const int lo = 2 * j - 1 < rep.tilde_digits.size() ? rep.tilde_digits[2 * j - 1] : 0;
        const OrderElement s = tilde_digit(ctx, lo) + t * Integer(hi);
        const auto idx = ctx.alphabet.index_of(s.coords());
        if (!idx) throw Error("paired digit missing from the alphabet");
        rep.representation.push_back(*idx);
    }
    return rep;
}

long UnitSumCertificate::max_coefficient() const {
    long m = 0;
    for (const auto& t : terms) m = std::max(m, t.coefficient);
    return m;
}

CertificateCheck verify_certificate(const UnitSumCertificate& cert) {
    CertificateCheck c;
    c.coefficients = std::all_of(cert.terms.begin(), cert.terms.end(),
                                 [&](const UnitTerm& t) { return t.coefficient >= 1 && t.coefficient <= cert.w_bound; });
    OrderElement sum = OrderElement::zero(cert.target.order());
    std::set<Coords> units;
    if (!cert.terms.empty()) {
        const OrderElement& b = cert.terms.front().unit.base;
        const auto binv = inverse(b);
        std::map<long, OrderElement> pw;
        pw.emplace(0, OrderElement::one(b.order()));
        auto get = [&](long m) -> const OrderElement& {
            auto it = pw.find(m);
            if (it != pw.end()) return it->second;
            if (m < 0 && !binv) throw Error("certificate base is not a unit");
            long k = m > 0 ? m - 1 : m + 1;
            while (!pw.count(k)) k += m > 0 ? -1 : 1;
            for (long s = k; s != m;) {
                const OrderElement next = pw.at(s) * (m > 0 ? b : *binv);
                s += m > 0 ? 1 : -1;
                pw.emplace(s, next);
            }
            return pw.at(m);
        };
        for (const auto& t : cert.terms) {
            if (!(t.unit.base == b)) throw Error("certificate mixes bases");
            const OrderElement u = t.unit.element * get(t.unit.shift);
            units.insert(u.coords());
            sum = sum + u * Integer(t.coefficient);
        }
    }
    c.distinct = units.size() == cert.terms.size();
    c.identity = sum == cert.target;
    return c;
}

const CriticalPointReport& Certifier::representation(const OrderElement& beta) {
    auto it = cache_.find(beta.coords());
    if (it != cache_.end()) return it->second;
    return cache_.emplace(beta.coords(), represent_critical_point(beta, *ctx_, max_depth_)).first->second;
}

UnitSumCertificate Certifier::unit_sum_representation(const OrderElement& alpha, double delta) {
    const FieldContext& ctx = *ctx_;
    std::optional<ExpansionResult> res;
    for (int attempt = 0;; ++attempt) {
        try {
            res = greedy_expand(alpha, ctx, delta);
            break;
        } catch (const ExpansionError& e) {
            if (e.kind != ExpansionError::Kind::incomplete_critical_set || attempt == 10) throw;
            delta /= 2;
        }
    }
    const FieldDescriptor& f = ctx.entry->field;
    const std::vector<OrderElement> torsion = torsion_units(f);
    const bool roots = ctx.alphabet.kind == AlphabetKind::roots_of_unity;
    const OrderElement& base = roots ? ctx.base : ctx.unit.unit;

    UnitSumCertificate cert;
    cert.target = alpha;
    cert.w_bound = ctx.w;
    auto add = [&](int root, long exponent, long coefficient) {
        UnitTerm t;
        t.root_power = root;
        t.exponent = exponent;
        t.coefficient = coefficient;
        t.unit = LaurentElement{torsion[static_cast<std::size_t>(root)], base, exponent};
        cert.terms.push_back(std::move(t));
    };
    auto add_digit = [&](std::size_t idx, long m) {
        const auto& dec = ctx.alphabet.decompositions[idx];
        if (roots) {
            for (int k = 1; k <= ctx.alphabet.mu; ++k)
                if (dec[static_cast<std::size_t>(k - 1)] > 0) add(k % ctx.alphabet.mu, m, dec[static_cast<std::size_t>(k - 1)]);
        } else {
            if (dec[0] != 0) add(dec[0] < 0 ? 1 : 0, 2 * m, std::abs(dec[0]));
            if (dec[1] != 0) add(dec[1] < 0 ? 1 : 0, 2 * m + 1, std::abs(dec[1]));
        }
    };
    const long N = res->N;
    const long n = res->n();
    for (std::size_t k = 0; k < res->digits.size(); ++k) add_digit(res->digits[k], n - static_cast<long>(k) - N);
    if (!res->beta.is_zero()) {
        const CriticalPointReport& rep = representation(res->beta);
        if (roots) {
            for (std::size_t j = 1; j <= rep.representation.size(); ++j)
                add_digit(rep.representation[j - 1], -static_cast<long>(j) - N);
        } else {
            for (std::size_t k = 1; k <= rep.tilde_digits.size(); ++k) {
                const int e = rep.tilde_digits[k - 1];
                if (e != 0) add(e < 0 ? 1 : 0, -static_cast<long>(k) - 2 * N, std::abs(e));
            }
        }
    }
    std::sort(cert.terms.begin(), cert.terms.end(), [](const UnitTerm& a, const UnitTerm& b) {
        return a.exponent != b.exponent ? a.exponent < b.exponent : a.root_power < b.root_power;
    });
    return cert;
}

UnitSumCertificate unit_sum_representation(const OrderElement& alpha, const FieldContext& ctx, double delta) {
    Certifier c(ctx);
    return c.unit_sum_representation(alpha, delta);
}

FieldReport certify_field(const FieldContext& ctx, int max_depth) {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldDescriptor& f = ctx.entry->field;
    FieldReport r;
    r.id = f.id;
    r.name = f.name;
    r.marker = f.marker;
    r.analysed = true;
    r.w = ctx.w;
    r.embedding = ctx.embedding;
    r.root_index = ctx.unit.embedding.chosen_index;
    r.precision = ctx.bits;
    r.C = static_cast<int>(ctx.critical.points.size());
    r.contains_zero = ctx.critical.contains_zero;
    bool all = true;
    int B = 0;
    for (std::size_t k = 0; k < ctx.critical.points.size(); ++k) {
        try {
            CriticalPointReport rep = represent_critical_point(ctx.critical.points[k], ctx, max_depth);
            rep.borderline = ctx.critical.borderline[k];
            B = std::max(B, rep.depth);
            r.points.push_back(std::move(rep));
        } catch (const Error& e) {
            all = false;
            r.failures.push_back(e.what());
        }
    }
    if (r.C > 0) r.B = B;
    if (all) r.omega_bound = ctx.w;
    if (all && ctx.w == 1) {
        r.dug = true;
        r.dug_route = "expansion";
    } else if (rewriting_applies(f)) {
        const auto rules = validate_derived_rules();
        if (std::all_of(rules.begin(), rules.end(), [](const DerivedRuleReport& d) { return d.ok(); })) {
            r.dug = true;
            r.dug_route = "rewriting";
            r.omega_bound = 1;
        }
    }
    if (r.dug) r.omega_bound = 1;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

FieldReport certify_entry(const CatalogEntry& entry, std::optional<int> w, std::optional<std::size_t> embedding,
                          mpfr_prec_t bits) {
    const FieldDescriptor& f = entry.field;
    if (f.region == RegionKind::none || entry.units.empty()) {
        FieldReport r;
        r.id = f.id;
        r.name = f.name;
        r.marker = f.marker;
        if (f.prior_dug) {
            r.dug = true;
            r.dug_route = "earlier_work";
            r.omega_bound = 1;
        } else {
            r.failures.push_back("no unit or region for digit expansion");
        }
        return r;
    }
    try {
        const FieldContext ctx = make_context(entry, w, embedding, bits);
        FieldReport r = certify_field(ctx);
        if (!r.dug && f.prior_dug) {
            r.dug = true;
            r.dug_route = "earlier_work";
            r.omega_bound = 1;
        }
        return r;
    } catch (const Error& e) {
        FieldReport r;
        r.id = f.id;
        r.name = f.name;
        r.marker = f.marker;
        r.failures.push_back(e.what());
        return r;
    }
}

}  // namespace unitsum
