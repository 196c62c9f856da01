#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unitsum/error.hpp"
#include "unitsum/integer.hpp"

namespace unitsum {

/// Monic quartic with integer coefficients, stored in ascending order.
class MinimalPolynomial {
public:
    MinimalPolynomial() = default;
    /// Throws Error unless the leading coefficient is exactly 1.
    explicit MinimalPolynomial(std::array<Integer, 5> ascending);
    static MinimalPolynomial from_longs(std::array<long, 5> ascending);

    const std::array<Integer, 5>& coefficients() const { return coeffs_; }
    const Integer& operator[](std::size_t k) const { return coeffs_[k]; }

    Integer discriminant() const;
    bool has_rational_root() const;
    /// True when the polynomial splits as a product of two monic integer quadratics.
    bool has_quadratic_factor() const;
    bool is_irreducible() const { return !has_rational_root() && !has_quadratic_factor(); }

    std::string to_string() const;

    friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;

private:
    std::array<Integer, 5> coeffs_{};
};

/// Dense integer polynomial helpers (ascending coefficients).
using IntPoly = std::vector<Integer>;

Integer determinant(std::vector<std::vector<Integer>> m);
Integer resultant(const IntPoly& f, const IntPoly& g);

/// An order of rank 4 inside Q[x]/(f), given by a Z-basis w_0..w_3 with
/// w_j = (sum_i numerators[j][i] x^i) / denominator. The power basis is the
/// special case denominator = 1, numerators = identity.
class Order {
public:
    using Basis = std::array<std::array<Integer, 4>, 4>;

    static std::shared_ptr<const Order> power_basis(MinimalPolynomial poly);
    /// Throws CatalogError if the lattice is not closed under multiplication or does not contain 1.
    static std::shared_ptr<const Order> with_basis(MinimalPolynomial poly, Integer denominator, Basis numerators);

    const MinimalPolynomial& polynomial() const { return poly_; }
    const Integer& denominator() const { return denominator_; }
    const Basis& numerators() const { return numerators_; }
    bool is_power_basis() const { return power_basis_; }

    const Coords& one() const { return one_; }
    /// Coordinates of the polynomial generator x, if it lies in the order.
    std::optional<Coords> generator() const;

    Coords add(const Coords& a, const Coords& b) const;
    Coords sub(const Coords& a, const Coords& b) const;
    Coords mul(const Coords& a, const Coords& b) const;
    Coords scale(const Coords& a, const Integer& k) const;

    /// Column j holds the coordinates of a * w_j.
    std::array<Coords, 4> multiplication_matrix(const Coords& a) const;
    static Coords apply(const std::array<Coords, 4>& matrix, const Coords& x);

    std::array<Rational, 4> to_power_coords(const Coords& a) const;
    /// Exact conversion back; nullopt when the element is not in the order.
    std::optional<Coords> from_power_coords(const std::array<Rational, 4>& p) const;

    /// Numerator polynomial N(x) with a = N(x) / denominator().
    IntPoly numerator_polynomial(const Coords& a) const;

    /// Discriminant of the order: disc(f) / [Z[x] : order]^2 up to the index.
    Rational discriminant() const;

    bool same_as(const Order& o) const;

private:
    Order(MinimalPolynomial poly, Integer denominator, Basis numerators);

    MinimalPolynomial poly_;
    Integer denominator_;
    Basis numerators_;
    bool power_basis_ = false;
    Coords one_;
    // table_[a][b] = coordinates of w_a * w_b
    std::array<std::array<Coords, 4>, 4> table_;
    std::array<std::array<Rational, 4>, 4> inverse_basis_;  // power coords -> basis coords
};

using OrderPtr = std::shared_ptr<const Order>;

/// Exact element of an order, as integer coordinates over its Z-basis.
class OrderElement {
public:
    OrderElement() = default;
    OrderElement(OrderPtr order, Coords coords) : order_(std::move(order)), coords_(std::move(coords)) {}

    static OrderElement zero(OrderPtr order) { return {order, zero_coords()}; }
    static OrderElement one(OrderPtr order) { return {order, order->one()}; }
    static OrderElement integer(OrderPtr order, const Integer& k);

    const OrderPtr& order() const { return order_; }
    const Coords& coords() const { return coords_; }
    bool is_zero() const { return unitsum::is_zero(coords_); }

    OrderElement operator+(const OrderElement& o) const;
    OrderElement operator-(const OrderElement& o) const;
    OrderElement operator*(const OrderElement& o) const;
    OrderElement operator-() const;
    OrderElement operator*(const Integer& k) const;

    friend bool operator==(const OrderElement& a, const OrderElement& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const OrderElement& a, const OrderElement& b) { return a.coords_ < b.coords_; }

    std::string to_string() const { return unitsum::to_string(coords_); }

private:
    void check_same(const OrderElement& o) const;

    OrderPtr order_;
    Coords coords_{};
};

enum class ArithmeticKind { add, sub, mul };

OrderElement arithmetic(const OrderElement& a, const OrderElement& b, ArithmeticKind kind);
/// Field norm, computed as Res(f, N) / denominator^4.
Integer norm(const OrderElement& a);
bool is_unit(const OrderElement& a);
OrderElement power(const OrderElement& a, unsigned long k);
/// Exact inverse inside the order, or nullopt when a is not a unit.
std::optional<OrderElement> inverse(const OrderElement& a);

/// element * base^shift with base a unit, so negative shifts stay in the order.
struct LaurentElement {
    OrderElement element;
    OrderElement base;
    long shift = 0;

    /// Throws Error when shift < 0 and the base is not a unit.
    OrderElement evaluate() const;
};

}  // namespace unitsum
