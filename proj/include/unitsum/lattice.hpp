#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "unitsum/catalog.hpp"
#include "unitsum/geometry.hpp"

namespace unitsum {

enum class AlphabetKind { roots_of_unity, affine_pair };

/// Finite digit set, ordered canonically with 0 first.
struct DigitAlphabet {
    AlphabetKind kind = AlphabetKind::roots_of_unity;
    int mu = 2;
    int w = 0;
    std::vector<OrderElement> elements;
    /// roots_of_unity: (d_1, ..., d_mu) with element = sum d_i zeta^i, minimal sum then lexicographic.
    /// affine_pair: (d_0, d_1) with element = d_0 + d_1 * eps~.
    std::vector<std::vector<int>> decompositions;
    /// max |s| under the second complex embedding, and under the main one
    Real conj_bound;
    Real main_bound;

    std::size_t size() const { return elements.size(); }
    std::optional<std::size_t> index_of(const Coords& c) const;

    std::unordered_map<Coords, std::size_t, CoordsHash> index;
};

/// w >= 0; the roots-of-unity kind needs zeta, the affine kind uses unit.unit as eps~.
DigitAlphabet build_alphabet(const FieldDescriptor& field, const UnitData& unit, int w);

/// Minkowski image of the Z-basis: rows (Re s1, Im s1, Re s2, Im s2).
struct LatticeEmbedding {
    std::array<std::array<Real, 4>, 4> matrix;
    std::array<std::array<Real, 4>, 4> inverse;
    std::array<std::array<double, 4>, 4> matrix_d{};
    std::array<std::array<double, 4>, 4> inverse_d{};
    Real determinant;

    static LatticeEmbedding make(const Order& order, const EmbeddingData& e);
};

struct CriticalSet {
    std::vector<OrderElement> points;  // nonzero, sorted by coordinates
    std::vector<bool> borderline;      // parallel to points
    bool contains_zero = false;
    Real radius;                       // C_2 / (1 - |eps^(2)|)
    std::size_t box_points = 0;
    std::size_t candidates = 0;
};

constexpr double kMaxBoxPoints = 1e9;

/// All alpha in the order with alpha in P under the main embedding and
/// |alpha^(2)| <= C_2 / (1 - |eps^(2)|). `base` is the expansion base.
/// `inflate` widens the conjugate bound additively.
CriticalSet enumerate_critical_points(const FieldDescriptor& field, const UnitData& unit, const OrderElement& base,
                                      const DigitAlphabet& alphabet, const Region& region, double inflate = 0.0);

}  // namespace unitsum
