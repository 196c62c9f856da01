#include <doctest.h>

#include <random>

#include "unitsum/expansion.hpp"

using namespace unitsum;

namespace {

const Catalog& catalog() {
    static const Catalog c = load_catalog(default_catalog_path(), 256);
    return c;
}

const FieldContext& context(const std::string& id) {
    static std::map<std::string, FieldContext> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, make_context(catalog().find(id))).first;
    return it->second;
}

Coords co(long a, long b, long c, long d) { return {Integer(a), Integer(b), Integer(c), Integer(d)}; }

// Oracle: sum of coefficient * torsion * base^exponent, powers built by repeated multiplication.
OrderElement evaluate(const UnitSumCertificate& c) {
    OrderElement s = OrderElement::zero(c.target.order());
    for (const auto& t : c.terms) {
        OrderElement u = t.unit.element;
        const OrderElement b = t.unit.base;
        const OrderElement bi = *inverse(b);
        for (long k = 0; k < std::abs(t.exponent); ++k) u = u * (t.exponent > 0 ? b : bi);
        s = s + u * Integer(t.coefficient);
    }
    return s;
}

}  // namespace

TEST_CASE("greedy expansion basics") {
    const FieldContext& ctx = context("q-sqrt-1-zeta4");
    const OrderPtr& o = ctx.base.order();
    const ExpansionResult zero = greedy_expand(OrderElement::zero(o), ctx);
    CHECK(zero.N == 0);
    CHECK(zero.digits.empty());
    CHECK(zero.beta.is_zero());

    const ExpansionResult e = greedy_expand(ctx.base, ctx);
    CHECK(e.verify(ctx));
    CHECK(e.beta.is_zero());

    const OrderElement a(o, co(5, 3, 0, 0));
    const ExpansionResult r = greedy_expand(a, ctx);
    CHECK(r.verify(ctx));
    // evaluation oracle: alpha eps^N - sum c_i eps^i is the remainder
    OrderElement lhs = a;
    for (long k = 0; k < r.N; ++k) lhs = lhs * ctx.base;
    OrderElement sum = OrderElement::zero(o), p = OrderElement::one(o);
    for (std::size_t k = r.digits.size(); k-- > 0; p = p * ctx.base) sum = sum + ctx.alphabet.elements[r.digits[k]] * p;
    CHECK(lhs - sum == r.beta);
    CHECK_THROWS_AS(greedy_expand(a, ctx, 0), Error);
}

TEST_CASE("critical points of the first square field") {
    const FieldContext& ctx = context("q-sqrt-1-zeta4");
    const OrderPtr& o = ctx.base.order();
    const OrderElement beta(o, co(1, -1, 0, 0));  // 1 - g
    const CriticalPointReport rep = represent_critical_point(beta, ctx);
    CHECK(rep.depth == 1);
    CHECK(rep.verify(ctx));
    REQUIRE(rep.representation.size() == 1);
    // one digit: beta * eps is a root of unity
    const OrderElement d = ctx.alphabet.elements[rep.representation[0]];
    CHECK(beta * ctx.base == d);
    CHECK(power(d, 4) == OrderElement::one(o));
    CHECK_THROWS_AS(represent_critical_point(OrderElement::zero(o), ctx), Error);
    CHECK_THROWS_AS(represent_critical_point(beta, ctx, 0), RepresentationError);
}

TEST_CASE("depth limit monotonicity") {
    const FieldContext& ctx = context("q-sqrt-4-zeta3");
    for (std::size_t k = 0; k < ctx.critical.points.size(); k += 7) {
        const CriticalPointReport a = represent_critical_point(ctx.critical.points[k], ctx, 6);
        const CriticalPointReport b = represent_critical_point(ctx.critical.points[k], ctx, 12);
        CHECK(a.representation == b.representation);
        CHECK(a.verify(ctx));
    }
}

TEST_CASE("certificates") {
    const FieldContext& ctx = context("q-sqrt-1-zeta4");
    const OrderPtr& o = ctx.base.order();
    const UnitSumCertificate one = unit_sum_representation(OrderElement::one(o), ctx);
    REQUIRE(one.terms.size() == 1);
    CHECK(one.terms[0].exponent == 0);
    CHECK(one.terms[0].coefficient == 1);
    CHECK(one.terms[0].unit.element == OrderElement::one(o));

    const UnitSumCertificate c = unit_sum_representation(OrderElement(o, co(1, -1, 0, 0)), ctx);
    REQUIRE(c.terms.size() == 1);
    CHECK(c.terms[0].exponent == -1);
    CHECK(verify_certificate(c).ok());

    UnitSumCertificate broken = c;
    broken.terms.push_back(broken.terms.front());
    const CertificateCheck chk = verify_certificate(broken);
    CHECK_FALSE(chk.distinct);
    CHECK_FALSE(chk.identity);
}

TEST_CASE("round trip on random elements") {
    std::mt19937_64 rng(20240);
    std::uniform_int_distribution<long> d(-20, 20);
    for (const char* id : {"q-sqrt-1-zeta4", "q-sqrt-7-4zeta4", "q-sqrt-5-4zeta3", "X4+2X2-2X+1", "X4-X3+X+1"}) {
        const FieldContext& ctx = context(id);
        Certifier cert(ctx);
        for (int t = 0; t < 25; ++t) {
            const OrderElement a(ctx.base.order(), co(d(rng), d(rng), d(rng), d(rng)));
            const UnitSumCertificate c = cert.unit_sum_representation(a);
            CAPTURE(id);
            CAPTURE(a.to_string());
            CHECK(verify_certificate(c).ok());
            CHECK(evaluate(c) == a);
            CHECK(c.max_coefficient() <= ctx.w);
        }
    }
}

TEST_CASE("field certification") {
    const FieldReport a = certify_field(context("q-sqrt-1-zeta4"));
    CHECK(a.w == 1);
    CHECK(a.C == 4);
    CHECK(a.B == 1);
    CHECK(a.dug);
    CHECK(a.dug_route == "expansion");

    const FieldReport b = certify_field(context("q-sqrt-7-4zeta4"));
    CHECK(b.w == 2);
    CHECK(b.C == 8);
    CHECK(b.B == 2);
    CHECK_FALSE(b.dug);
    CHECK(b.omega_bound == 2);

    const FieldReport c = certify_field(context("q-sqrt-11-7zeta3"));
    CHECK(c.w == 1);
    CHECK(c.C == 0);
    CHECK_FALSE(c.B);
    CHECK(c.dug);

    const FieldReport p = certify_entry(catalog().find("q-zeta5"));
    CHECK(p.dug);
    CHECK(p.dug_route == "earlier_work");
    CHECK_FALSE(p.analysed);
    const FieldReport q = certify_entry(catalog().find("q-sqrt-m1-msqrt2"));
    CHECK(q.dug);
    CHECK(q.omega_bound == 1);
}

TEST_CASE("squared base representations use eps~ digits") {
    const FieldContext& ctx = context("X4-X3+2X2-X+2");
    int deepest = 0;
    for (const auto& p : ctx.critical.points) {
        const CriticalPointReport r = represent_critical_point(p, ctx);
        CHECK(r.verify(ctx));
        CHECK(static_cast<int>(r.tilde_digits.size()) == r.depth);
        CHECK(r.representation.size() == static_cast<std::size_t>((r.depth + 1) / 2));
        deepest = std::max(deepest, r.depth);
    }
    CHECK(deepest == 3);
}
