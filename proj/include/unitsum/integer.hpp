#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace unitsum {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Coordinates of an element of a rank-4 order over its Z-basis.
using Coords = std::array<Integer, 4>;

inline Coords zero_coords() { return {Integer(0), Integer(0), Integer(0), Integer(0)}; }
inline Coords unit_coords(std::size_t k) {
    Coords c = zero_coords();
    c[k] = 1;
    return c;
}

inline bool is_zero(const Coords& c) {
    return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

std::string to_string(const Coords& c);

struct CoordsHash {
    std::size_t operator()(const Coords& c) const noexcept;
};

}  // namespace unitsum
