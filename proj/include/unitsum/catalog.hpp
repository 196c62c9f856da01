#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "unitsum/numerics.hpp"
#include "unitsum/ring.hpp"

namespace unitsum {

enum class Marker { none, dagger, double_dagger };
enum class RegionKind { square, hexagon, parallelogram, polygon, none };

const char* to_string(Marker m);
const char* to_string(RegionKind k);

struct ExpectedRow {
    int w = 0;
    int C = 0;
    std::optional<int> B;  // empty when C = 0
};

struct EmbeddingChoice {
    int root_index = 0;
    Coords unit;
};

struct FieldDescriptor {
    std::string id;
    std::string name;
    MinimalPolynomial min_poly;
    OrderPtr order;
    int real_roots = 0;
    int mu = 2;
    std::optional<OrderElement> zeta;  // primitive mu-th root of unity, mu > 2
    Marker marker = Marker::none;
    std::optional<int> table;
    std::optional<ExpectedRow> expected;
    RegionKind region = RegionKind::none;
    bool squared_base = false;
    bool prior_dug = false;  // settled by earlier work rather than by this method
    std::vector<EmbeddingChoice> embeddings;
    std::optional<std::complex<double>> printed_unit;
};

/// One unit together with the embedding it is complex Pisot under.
struct UnitData {
    OrderElement unit;  // epsilon, or epsilon-tilde when squared
    bool is_squared_base = false;
    EmbeddingData embedding;

    OrderElement base() const { return is_squared_base ? unit * unit : unit; }
};

struct CatalogEntry {
    FieldDescriptor field;
    std::vector<UnitData> units;  // parallel to field.embeddings
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    /// Throws CatalogError for an unknown id.
    const CatalogEntry& find(const std::string& id) const;
    const CatalogEntry* try_find(const std::string& id) const;

private:
    std::vector<CatalogEntry> entries_;
};

/// Path compiled into the library, overridable through UNITSUM_CATALOG.
std::string default_catalog_path();

/// Parses and verifies every entry; any invariant failure throws CatalogError naming the entry.
Catalog load_catalog(const std::string& path, mpfr_prec_t bits);
Catalog load_catalog();
Catalog parse_catalog(const std::string& json_text, mpfr_prec_t bits);

struct VerificationReport {
    std::string id;
    bool ok = true;
    std::vector<std::string> failures;
};

VerificationReport verify_catalog_entry(const CatalogEntry& entry);

struct FoundUnit {
    OrderElement unit;
    int root_index = 0;  // root with positive imaginary part of the Pisot pair
    Real modulus;
};

/// Exhaustive search over coordinates in [-coord_bound, coord_bound]^4 for units
/// that are complex Pisot under some embedding. Returns the one of least main
/// modulus, normalised to its canonical associate; nullopt when none exists.
std::optional<FoundUnit> find_pisot_unit(const FieldDescriptor& field, long coord_bound, mpfr_prec_t bits);

/// Powers of zeta, or {1, -1} when mu = 2.
std::vector<OrderElement> torsion_units(const FieldDescriptor& field);

/// Smallest lexicographic coordinates among torsion multiples with positive real part under `main`.
OrderElement canonical_associate(const OrderElement& u, const std::vector<OrderElement>& torsion,
                                 const Embedder& main);

}  // namespace unitsum
