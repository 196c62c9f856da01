#include "unitsum/ring.hpp"

#include <sstream>
#include <utility>

namespace unitsum {

namespace {

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> out;
    Integer m = abs(n);
    if (m == 0) return out;
    for (Integer d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            if (d * d != m) out.push_back(m / d);
        }
    }
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) out.push_back(-out[i]);
    return out;
}

Integer eval(const std::array<Integer, 5>& f, const Integer& x) {
    Integer r = 0;
    for (int i = 4; i >= 0; --i) r = r * x + f[static_cast<std::size_t>(i)];
    return r;
}

IntPoly trimmed(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// p * q reduced modulo the monic quartic f, all over Q.
std::array<Rational, 4> mulmod(const std::array<Rational, 4>& p, const std::array<Rational, 4>& q,
                               const MinimalPolynomial& f) {
    std::array<Rational, 7> r{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) r[i + j] += p[i] * q[j];
    }
    for (std::size_t k = 6; k >= 4; --k) {
        const Rational c = r[k];
        if (c == 0) continue;
        r[k] = 0;
        for (std::size_t j = 0; j < 4; ++j) r[k - 4 + j] -= c * Rational(f[j]);
    }
    return {r[0], r[1], r[2], r[3]};
}

// Solves m x = rhs over Q; m is square and assumed nonsingular.
std::vector<Rational> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw Error("singular linear system");
        std::swap(m[c], m[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

}  // namespace

// ---------------------------------------------------------------- polynomial

MinimalPolynomial::MinimalPolynomial(std::array<Integer, 5> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_[4] != 1) throw Error("minimal polynomial must be monic of degree 4");
}

MinimalPolynomial MinimalPolynomial::from_longs(std::array<long, 5> a) {
    return MinimalPolynomial({Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4])});
}

Integer MinimalPolynomial::discriminant() const {
    IntPoly f(coeffs_.begin(), coeffs_.end());
    IntPoly df;
    for (std::size_t k = 1; k < 5; ++k) df.push_back(coeffs_[k] * static_cast<long>(k));
    // monic quartic: disc = (-1)^(4*3/2) Res(f, f') = Res(f, f')
    return resultant(f, df);
}

bool MinimalPolynomial::has_rational_root() const {
    if (coeffs_[0] == 0) return true;
    for (const auto& d : divisors(coeffs_[0]))
        if (eval(coeffs_, d) == 0) return true;
    return false;
}

bool MinimalPolynomial::has_quadratic_factor() const {
    // (x^2 + a x + b)(x^2 + c x + d) with b d = c0, a + c = c3, b + d + a c = c2, a d + b c = c1
    const Integer& c0 = coeffs_[0];
    const Integer& c1 = coeffs_[1];
    const Integer& c2 = coeffs_[2];
    const Integer& c3 = coeffs_[3];
    if (c0 == 0) return false;
    for (const auto& b : divisors(c0)) {
        const Integer d = c0 / b;
        const Integer disc = c3 * c3 - 4 * (c2 - b - d);
        if (disc < 0) continue;
        const Integer s = boost::multiprecision::sqrt(disc);
        if (s * s != disc) continue;
        for (const Integer& root : std::array<Integer, 2>{Integer(c3 + s), Integer(c3 - s)}) {
            if (root % 2 != 0) continue;
            const Integer a = root / 2;
            const Integer c = c3 - a;
            if (a * d + b * c == c1) return true;
        }
    }
    return false;
}

std::string MinimalPolynomial::to_string() const {
    std::ostringstream os;
    os << "X^4";
    const char* pow[] = {"", "X", "X^2", "X^3"};
    for (int k = 3; k >= 0; --k) {
        const Integer& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        os << (c < 0 ? "-" : "+");
        const Integer m = abs(c);
        if (m != 1 || k == 0) os << m;
        os << pow[k];
    }
    return os.str();
}

Integer determinant(std::vector<std::vector<Integer>> m) {
    // Bareiss fraction-free elimination
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Integer resultant(const IntPoly& f_in, const IntPoly& g_in) {
    const IntPoly f = trimmed(f_in);
    const IntPoly g = trimmed(g_in);
    if (f.empty() || g.empty()) return 0;
    const std::size_t m = f.size() - 1;
    const std::size_t n = g.size() - 1;
    if (m == 0 && n == 0) return 1;
    const std::size_t size = m + n;
    std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, Integer(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
    return determinant(std::move(s));
}

// --------------------------------------------------------------------- order

Order::Order(MinimalPolynomial poly, Integer denominator, Basis numerators)
    : poly_(std::move(poly)), denominator_(std::move(denominator)), numerators_(std::move(numerators)) {
    if (denominator_ <= 0) throw CatalogError("order basis denominator must be positive");
    power_basis_ = denominator_ == 1;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            if (numerators_[j][i] != (i == j ? 1 : 0)) power_basis_ = false;

    // power coordinates p satisfy p_i = sum_j c_j B[j][i]; invert B^T.
    std::vector<std::vector<Rational>> bt(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) bt[i][j] = Rational(numerators_[j][i], denominator_);
    for (std::size_t col = 0; col < 4; ++col) {
        std::vector<Rational> e(4, Rational(0));
        e[col] = 1;
        const auto x = solve(bt, e);
        for (std::size_t j = 0; j < 4; ++j) inverse_basis_[j][col] = x[j];
    }

    const auto one = from_power_coords({Rational(1), Rational(0), Rational(0), Rational(0)});
    if (!one) throw CatalogError("order basis does not contain 1");
    one_ = *one;

    std::array<std::array<Rational, 4>, 4> b{};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) b[j][i] = Rational(numerators_[j][i], denominator_);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t c = a; c < 4; ++c) {
            const auto prod = from_power_coords(mulmod(b[a], b[c], poly_));
            if (!prod) throw CatalogError("order basis is not closed under multiplication");
            table_[a][c] = *prod;
            table_[c][a] = *prod;
        }
    }
}

std::shared_ptr<const Order> Order::power_basis(MinimalPolynomial poly) {
    Basis id{};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) id[j][i] = (i == j) ? 1 : 0;
    return with_basis(std::move(poly), Integer(1), id);
}

std::shared_ptr<const Order> Order::with_basis(MinimalPolynomial poly, Integer denominator, Basis numerators) {
    return std::shared_ptr<const Order>(new Order(std::move(poly), std::move(denominator), std::move(numerators)));
}

std::optional<Coords> Order::generator() const {
    return from_power_coords({Rational(0), Rational(1), Rational(0), Rational(0)});
}

Coords Order::add(const Coords& a, const Coords& b) const {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Coords Order::sub(const Coords& a, const Coords& b) const {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Coords Order::scale(const Coords& a, const Integer& k) const { return {a[0] * k, a[1] * k, a[2] * k, a[3] * k}; }

Coords Order::mul(const Coords& a, const Coords& b) const {
    Coords r = zero_coords();
    Integer t;
    for (std::size_t i = 0; i < 4; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            const Coords& w = table_[i][j];
            for (std::size_t k = 0; k < 4; ++k)
                if (w[k] != 0) r[k] += t * w[k];
        }
    }
    return r;
}

std::array<Coords, 4> Order::multiplication_matrix(const Coords& a) const {
    std::array<Coords, 4> m;
    for (std::size_t j = 0; j < 4; ++j) m[j] = mul(a, unit_coords(j));
    return m;
}

Coords Order::apply(const std::array<Coords, 4>& matrix, const Coords& x) {
    Coords r = zero_coords();
    for (std::size_t j = 0; j < 4; ++j) {
        if (x[j] == 0) continue;
        for (std::size_t k = 0; k < 4; ++k)
            if (matrix[j][k] != 0) r[k] += matrix[j][k] * x[j];
    }
    return r;
}

std::array<Rational, 4> Order::to_power_coords(const Coords& a) const {
    std::array<Rational, 4> p{};
    for (std::size_t j = 0; j < 4; ++j) {
        if (a[j] == 0) continue;
        for (std::size_t i = 0; i < 4; ++i) p[i] += Rational(a[j] * numerators_[j][i], denominator_);
    }
    return p;
}

std::optional<Coords> Order::from_power_coords(const std::array<Rational, 4>& p) const {
    Coords c;
    for (std::size_t j = 0; j < 4; ++j) {
        Rational v = 0;
        for (std::size_t i = 0; i < 4; ++i) v += inverse_basis_[j][i] * p[i];
        if (boost::multiprecision::denominator(v) != 1) return std::nullopt;
        c[j] = boost::multiprecision::numerator(v);
    }
    return c;
}

IntPoly Order::numerator_polynomial(const Coords& a) const {
    IntPoly p(4, Integer(0));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) p[i] += a[j] * numerators_[j][i];
    return p;
}

Rational Order::discriminant() const {
    std::vector<std::vector<Integer>> m(4, std::vector<Integer>(4));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) m[j][i] = numerators_[j][i];
    const Integer det = determinant(m);
    const Integer d4 = denominator_ * denominator_ * denominator_ * denominator_;
    return Rational(poly_.discriminant()) * Rational(det * det, d4 * d4);
}

bool Order::same_as(const Order& o) const {
    return this == &o || (poly_ == o.poly_ && denominator_ == o.denominator_ && numerators_ == o.numerators_);
}

// ------------------------------------------------------------------- element

OrderElement OrderElement::integer(OrderPtr order, const Integer& k) {
    Coords c = order->scale(order->one(), k);
    return {std::move(order), std::move(c)};
}

void OrderElement::check_same(const OrderElement& o) const {
    if (!order_ || !o.order_) throw FieldMismatch("operation on an element without an order");
    if (!order_->same_as(*o.order_)) throw FieldMismatch("operands belong to different orders");
}

OrderElement OrderElement::operator+(const OrderElement& o) const {
    check_same(o);
    return {order_, order_->add(coords_, o.coords_)};
}

OrderElement OrderElement::operator-(const OrderElement& o) const {
    check_same(o);
    return {order_, order_->sub(coords_, o.coords_)};
}

OrderElement OrderElement::operator*(const OrderElement& o) const {
    check_same(o);
    return {order_, order_->mul(coords_, o.coords_)};
}

OrderElement OrderElement::operator-() const { return {order_, order_->scale(coords_, Integer(-1))}; }

OrderElement OrderElement::operator*(const Integer& k) const { return {order_, order_->scale(coords_, k)}; }

OrderElement arithmetic(const OrderElement& a, const OrderElement& b, ArithmeticKind kind) {
    switch (kind) {
        case ArithmeticKind::add:
            return a + b;
        case ArithmeticKind::sub:
            return a - b;
        case ArithmeticKind::mul:
            return a * b;
    }
    throw Error("unknown arithmetic kind");
}

Integer norm(const OrderElement& a) {
    if (a.is_zero()) return 0;
    const Order& o = *a.order();
    const auto& f = o.polynomial().coefficients();
    const Integer res = resultant(IntPoly(f.begin(), f.end()), o.numerator_polynomial(a.coords()));
    const Integer d = o.denominator();
    const Integer d4 = d * d * d * d;
    if (res % d4 != 0) throw Error("norm is not integral; the order basis is inconsistent");
    return res / d4;
}

bool is_unit(const OrderElement& a) { return abs(norm(a)) == 1; }

OrderElement power(const OrderElement& a, unsigned long k) {
    OrderElement result = OrderElement::one(a.order());
    OrderElement base = a;
    while (k) {
        if (k & 1UL) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

std::optional<OrderElement> inverse(const OrderElement& a) {
    if (a.is_zero()) return std::nullopt;
    const Order& o = *a.order();
    const auto m = o.multiplication_matrix(a.coords());
    std::vector<std::vector<Rational>> rows(4, std::vector<Rational>(4));
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < 4; ++j) rows[k][j] = Rational(m[j][k]);
    std::vector<Rational> rhs(4);
    for (std::size_t k = 0; k < 4; ++k) rhs[k] = Rational(o.one()[k]);
    const auto x = solve(rows, rhs);
    Coords c;
    for (std::size_t j = 0; j < 4; ++j) {
        if (denominator(x[j]) != 1) return std::nullopt;
        c[j] = numerator(x[j]);
    }
    return OrderElement(a.order(), c);
}

OrderElement LaurentElement::evaluate() const {
    if (shift >= 0) return element * power(base, static_cast<unsigned long>(shift));
    const auto inv = inverse(base);
    if (!inv) throw Error("negative power of a non-unit base");
    return element * power(*inv, static_cast<unsigned long>(-shift));
}

}  // namespace unitsum
