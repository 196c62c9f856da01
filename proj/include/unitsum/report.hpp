#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "unitsum/catalog.hpp"
#include "unitsum/expansion.hpp"
#include "unitsum/geometry.hpp"
#include "unitsum/rewriting.hpp"

namespace unitsum {

constexpr int kSchemaVersion = 1;

nlohmann::json coords_json(const Coords& c);
nlohmann::json real_json(const Real& x);
nlohmann::json complex_json(const Complex& z);

nlohmann::json to_json(const FieldReport& r);
nlohmann::json to_json(const CriticalPointReport& r, const DigitAlphabet& alphabet);
nlohmann::json to_json(const UnitSumCertificate& c);
nlohmann::json to_json(const CoveringVerdict& v);
nlohmann::json to_json(const CoverageResult& r);
nlohmann::json to_json(const RewriteTrace& t, bool with_steps);
/// Wraps a payload with the schema version and a kind tag.
nlohmann::json document(const std::string& kind, nlohmann::json payload);

/// Sorted keys, two-space indent: the byte-stable form used for files.
std::string dump_canonical(const nlohmann::json& j);

struct TableCheck {
    std::string id;
    int table = 0;
    ExpectedRow expected;
    FieldReport report;
    bool counts_match = false;
    std::optional<bool> unit_matches;  // printed unit comparison, rows that list one
    bool ok() const { return counts_match && unit_matches.value_or(true); }
};

/// Certifies every catalog field listed in `table` (all tables when empty), in catalog order.
std::vector<TableCheck> verify_tables(const Catalog& catalog, std::optional<int> table, mpfr_prec_t bits = 0);

}  // namespace unitsum
