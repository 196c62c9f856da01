#include <doctest.h>

#include <complex>
#include <random>

#include "unitsum/numerics.hpp"
#include "unitsum/ring.hpp"

using namespace unitsum;

namespace {

using cld = std::complex<long double>;

// Roots by plain Durand-Kerner in long double; independent of the library solver.
std::array<cld, 4> roots_ld(const std::array<long, 5>& c) {
    std::array<cld, 4> z;
    for (int k = 0; k < 4; ++k) z[static_cast<std::size_t>(k)] = std::pow(cld(0.4L, 0.9L), k);
    auto f = [&](cld x) { return (((x + cld(c[3])) * x + cld(c[2])) * x + cld(c[1])) * x + cld(c[0]); };
    for (int it = 0; it < 500; ++it)
        for (std::size_t i = 0; i < 4; ++i) {
            cld d = 1;
            for (std::size_t j = 0; j < 4; ++j)
                if (j != i) d *= z[i] - z[j];
            z[i] -= f(z[i]) / d;
        }
    return z;
}

// Power-basis element as polynomial, reduced modulo a monic quartic.
std::array<long long, 4> mulmod(const std::array<long long, 4>& a, const std::array<long long, 4>& b,
                                const std::array<long, 5>& f) {
    std::array<long long, 7> p{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    for (int d = 6; d >= 4; --d) {
        const long long c = p[static_cast<std::size_t>(d)];
        p[static_cast<std::size_t>(d)] = 0;
        for (int k = 0; k < 4; ++k) p[static_cast<std::size_t>(d - 4 + k)] -= c * f[static_cast<std::size_t>(k)];
    }
    return {p[0], p[1], p[2], p[3]};
}

Coords co(long a, long b, long c, long d) { return {Integer(a), Integer(b), Integer(c), Integer(d)}; }

}  // namespace

TEST_CASE("polynomial invariants") {
    const auto f = MinimalPolynomial::from_longs({1, -1, 0, 0, 1});
    CHECK(f.discriminant() == 229);
    CHECK(f.is_irreducible());
    const auto g = MinimalPolynomial::from_longs({4, 0, 0, 0, 1});  // (x^2+2x+2)(x^2-2x+2)
    CHECK(g.has_quadratic_factor());
    CHECK_FALSE(g.is_irreducible());
    const auto h = MinimalPolynomial::from_longs({-1, 0, 0, 0, 1});
    CHECK(h.has_rational_root());
    CHECK_THROWS_AS(MinimalPolynomial({Integer(1), Integer(0), Integer(0), Integer(0), Integer(2)}), Error);
}

TEST_CASE("resultant agrees with a product over roots") {
    const std::array<long, 5> fc{2, 0, -2, 0, 1};
    const auto r = roots_ld(fc);
    const IntPoly f{2, 0, -2, 0, 1};
    const IntPoly n{3, -1, 2};  // 3 - x + 2x^2
    cld prod = 1;
    for (const auto& z : r) prod *= cld(3) - z + cld(2) * z * z;
    CHECK(resultant(f, n) == Integer(static_cast<long long>(std::llround(static_cast<double>(prod.real())))));
}

TEST_CASE("power basis multiplication matches polynomial arithmetic") {
    const std::array<long, 5> fc{1, -1, 0, 0, 1};
    const auto order = Order::power_basis(MinimalPolynomial::from_longs(fc));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 200; ++t) {
        std::array<long long, 4> a{d(rng), d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng), d(rng)};
        const auto p = mulmod(a, b, fc);
        const OrderElement x(order, co(a[0], a[1], a[2], a[3]));
        const OrderElement y(order, co(b[0], b[1], b[2], b[3]));
        CHECK((x * y).coords() == co(p[0], p[1], p[2], p[3]));
    }
}

TEST_CASE("norm equals the product of embeddings") {
    const std::array<long, 5> fc{2, 0, -2, 0, 1};
    const auto order = Order::power_basis(MinimalPolynomial::from_longs(fc));
    const auto r = roots_ld(fc);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
        const std::array<long, 4> a{d(rng), d(rng), d(rng), d(rng)};
        cld prod = 1;
        for (const auto& z : r) prod *= cld(a[0]) + z * (cld(a[1]) + z * (cld(a[2]) + z * cld(a[3])));
        const OrderElement x(order, co(a[0], a[1], a[2], a[3]));
        CHECK(norm(x) == Integer(static_cast<long long>(std::llround(static_cast<double>(prod.real())))));
    }
    const OrderElement eps(order, co(1, 1, 0, 0));
    CHECK(is_unit(eps));
    CHECK_FALSE(is_unit(OrderElement(order, co(2, 0, 0, 0))));
}

TEST_CASE("ring axioms and inverses") {
    const auto order = Order::power_basis(MinimalPolynomial::from_longs({1, -1, 0, 0, 1}));
    const OrderElement g(order, co(0, 1, 0, 0));
    const auto gi = inverse(g);
    REQUIRE(gi);
    CHECK((*gi * g) == OrderElement::one(order));
    CHECK(gi->coords() == co(1, 0, 0, -1));  // 1 - g^3
    CHECK_FALSE(inverse(OrderElement(order, co(2, 0, 0, 0))));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int t = 0; t < 50; ++t) {
        const OrderElement a(order, co(d(rng), d(rng), d(rng), d(rng)));
        const OrderElement b(order, co(d(rng), d(rng), d(rng), d(rng)));
        const OrderElement c(order, co(d(rng), d(rng), d(rng), d(rng)));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
    const LaurentElement l{OrderElement::one(order), g, -3};
    CHECK(l.evaluate() * power(g, 3) == OrderElement::one(order));
}

TEST_CASE("orders with a denominator") {
    const std::array<long, 5> fc{13, 0, -7, 0, 1};
    const auto f = MinimalPolynomial::from_longs(fc);
    const Order::Basis num{co(2, 0, 0, 0), co(0, 2, 0, 0), co(1, 1, 1, 0), co(1, 0, 0, 1)};
    const auto o = Order::with_basis(f, 2, num);
    CHECK_FALSE(o->is_power_basis());
    // disc(x^4 + b x^2 + c) = 16 c (b^2 - 4c)^2, index [O : Z[x]] = 2^4 / det(num) = 4
    CHECK(o->discriminant() == Rational(16 * 13 * 9, 16));
    const auto r = roots_ld(fc);
    const OrderElement w2(o, co(0, 0, 1, 0));
    cld prod = 1;
    for (const auto& z : r) prod *= (cld(1) + z + z * z) / cld(2);
    CHECK(norm(w2) == Integer(static_cast<long long>(std::llround(static_cast<double>(prod.real())))));
    const auto pc = o->to_power_coords(w2.coords());
    CHECK(pc[0] == Rational(1, 2));
    CHECK(o->from_power_coords(pc) == w2.coords());
    CHECK_FALSE(o->from_power_coords({Rational(1, 2), 0, 0, 0}));
    // x^2 = 2 w2 - w0 - w1
    const auto g = o->generator();
    REQUIRE(g);
    const OrderElement x(o, *g);
    CHECK((x * x).coords() == co(-1, -1, 2, 0));

    const Order::Basis half{co(2, 0, 0, 0), co(0, 2, 0, 0), co(0, 0, 2, 0), co(1, 1, 1, 1)};
    CHECK_THROWS_AS(Order::with_basis(MinimalPolynomial::from_longs({1, -1, 0, 0, 1}), 2, half), CatalogError);
    const OrderElement b(Order::power_basis(MinimalPolynomial::from_longs({1, -1, 0, 0, 1})), co(1, 0, 0, 0));
    CHECK_THROWS_AS(w2 + b, FieldMismatch);
}
