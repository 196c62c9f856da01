#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "unitsum/catalog.hpp"
#include "unitsum/geometry.hpp"
#include "unitsum/lattice.hpp"

namespace unitsum {

/// Raised by greedy_expand; `kind` separates the two documented failure modes.
class ExpansionError : public Error {
public:
    enum class Kind { incomplete_critical_set, covering_violated };
    ExpansionError(Kind k, const std::string& what) : Error(what), kind(k) {}
    Kind kind;
};

/// Raised when a critical point has no representation within the depth limit.
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// Everything needed to expand in one field with one unit, alphabet and region.
struct FieldContext {
    const CatalogEntry* entry = nullptr;
    std::size_t embedding = 0;
    UnitData unit;
    OrderElement base;  // eps; equals unit.unit squared for squared-base fields
    Criterion criterion = Criterion::square;
    Region region;
    int w = 0;
    DigitAlphabet alphabet;
    CriticalSet critical;
    Embedder main;
    Embedder other;
    mpfr_prec_t bits = Real::kDefaultBits;

    Complex base_main() const { return main(base.coords()); }
    Complex base_other() const { return other(base.coords()); }
    bool squared() const { return unit.is_squared_base; }
    bool is_critical(const Coords& c) const;

    // exact powers of the base, grown on demand
    const OrderElement& base_power(std::size_t k) const;

private:
    friend FieldContext make_context(const CatalogEntry&, std::optional<int>, std::optional<std::size_t>, mpfr_prec_t);
    std::unordered_map<Coords, std::size_t, CoordsHash> critical_index_;
    mutable std::vector<OrderElement> powers_;
};

/// Picks the minimal w (or uses the given one), builds the alphabet and enumerates the critical set.
FieldContext make_context(const CatalogEntry& entry, std::optional<int> w = std::nullopt,
                          std::optional<std::size_t> embedding = std::nullopt, mpfr_prec_t bits = 0);

struct ExpansionResult {
    OrderElement alpha;
    long N = 0;
    std::vector<std::size_t> digits;  // alphabet indices for c_n ... c_0; empty when n = -1
    OrderElement beta;
    double delta = 0;

    long n() const { return static_cast<long>(digits.size()) - 1; }
    /// alpha * eps^N == beta + sum c_i eps^i in exact arithmetic.
    bool verify(const FieldContext& ctx) const;
};

ExpansionResult greedy_expand(const OrderElement& alpha, const FieldContext& ctx, double delta = 1e-6);

struct CriticalPointReport {
    OrderElement point;
    std::vector<std::size_t> representation;  // alphabet indices for s_-1 ... s_-J
    /// Reported depth: J, or the number of eps~ digits for squared-base fields.
    int depth = 0;
    std::vector<int> tilde_digits;  // e_1 ... e_depth with point = sum e_k eps~^-k (squared base only)
    bool borderline = false;

    /// point * eps^J == sum s_-j eps^(J-j), and the eps~ identity when present.
    bool verify(const FieldContext& ctx) const;
};

constexpr int kDefaultMaxDepth = 24;

/// Breadth-first search for the shortest representation, lexicographically least among those.
/// Throws RepresentationError naming beta when none exists within max_depth.
CriticalPointReport represent_critical_point(const OrderElement& beta, const FieldContext& ctx,
                                             int max_depth = kDefaultMaxDepth);

struct UnitTerm {
    LaurentElement unit;  // torsion * base^exponent with base eps, or eps~ for squared fields
    long coefficient = 1;
    int root_power = 0;   // zeta^k; for mu = 2, 0 means +1 and 1 means -1
    long exponent = 0;
};

struct UnitSumCertificate {
    OrderElement target;
    std::vector<UnitTerm> terms;  // sorted by (exponent, root_power)
    int w_bound = 1;

    long max_coefficient() const;
};

struct CertificateCheck {
    bool identity = false;
    bool distinct = false;
    bool coefficients = false;
    bool ok() const { return identity && distinct && coefficients; }
};

CertificateCheck verify_certificate(const UnitSumCertificate& cert);

/// Lazily caches critical point representations.
class Certifier {
public:
    explicit Certifier(const FieldContext& ctx, int max_depth = kDefaultMaxDepth) : ctx_(&ctx), max_depth_(max_depth) {}

    const CriticalPointReport& representation(const OrderElement& beta);
    /// Halves delta up to 10 times when the remainder misses the critical set.
    UnitSumCertificate unit_sum_representation(const OrderElement& alpha, double delta = 1e-6);
    const FieldContext& context() const { return *ctx_; }

private:
    const FieldContext* ctx_;
    int max_depth_;
    std::unordered_map<Coords, CriticalPointReport, CoordsHash> cache_;
};

UnitSumCertificate unit_sum_representation(const OrderElement& alpha, const FieldContext& ctx, double delta = 1e-6);

struct FieldReport {
    std::string id;
    std::string name;
    bool analysed = false;
    int w = 0;
    std::size_t embedding = 0;
    int root_index = 0;
    int C = 0;
    std::optional<int> B;
    bool dug = false;
    std::string dug_route;  // "expansion", "rewriting", "earlier_work" or empty
    int omega_bound = 0;    // 0 when nothing is certified
    Marker marker = Marker::none;
    bool contains_zero = false;
    std::vector<CriticalPointReport> points;
    std::vector<std::string> failures;
    double seconds = 0;
    mpfr_prec_t precision = 0;
};

FieldReport certify_field(const FieldContext& ctx, int max_depth = kDefaultMaxDepth);
/// Handles fields settled elsewhere and stage failures as partial reports.
FieldReport certify_entry(const CatalogEntry& entry, std::optional<int> w = std::nullopt,
                          std::optional<std::size_t> embedding = std::nullopt, mpfr_prec_t bits = 0);

}  // namespace unitsum
