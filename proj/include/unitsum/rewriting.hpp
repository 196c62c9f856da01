#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitsum/catalog.hpp"
#include "unitsum/expansion.hpp"
#include "unitsum/ring.hpp"

namespace unitsum {

/// Finite integer-digit word sum v_n g^n, stored densely from its lowest position.
class Word {
public:
    Word() = default;
    /// Digits most significant first; the last one sits at position `low`.
    Word(const std::vector<long>& msd_first, long low);
    /// Parses "d_k,...,d_l@l" (commas optional for single-character digits, shift optional).
    static Word parse(const std::string& text);

    long at(long pos) const;
    void add(long pos, long delta);
    bool empty() const { return digits_.empty(); }
    long low() const { return low_; }
    long high() const { return low_ + static_cast<long>(digits_.size()) - 1; }
    /// Positions holding nonzero digits, ascending.
    std::vector<long> support() const;
    std::vector<long> msd_first() const;
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    Word& operator+=(const Word& o);

private:
    long low_ = 0;
    std::vector<long> digits_;  // digits_[k] sits at low_ + k; both ends nonzero

    void trim();
};

long weight(const Word& v);

enum class RuleName { w1, w2, w3, w4 };
const char* to_string(RuleName r);
/// 100-11, 10000003000001, 10001001000-11, 11100000001 as words at position 0.
const Word& rule_word(RuleName r);

/// v + sign * g^position * rule
Word apply_rule(const Word& v, RuleName rule, long position, int sign);

struct RewriteStep {
    std::string label;  // rule name for sparsification, table name for normalisation
    char case_id = 0;   // 'a'..'h' during sparsification
    long position = 0;
    int sign = 1;
    Word change;        // value-zero word added by this step
};

struct RewriteTrace {
    Word initial;
    Word result;
    std::vector<RewriteStep> steps;
    /// initial plus every change reproduces result.
    bool replays() const;
};

struct SparseViolation {
    int condition = 0;  // 1..5
    long index = 0;
    long m = 0;         // offset for conditions 2 and 3
};

/// First violated sparsity condition, scanning positions upwards.
std::optional<SparseViolation> check_sparse_conditions(const Word& v);

/// Weight never increases; throws Error when the step guard is exceeded.
RewriteTrace sparsify(const Word& v);
/// Requires a sparse word; resolves every digit 2 by the case tables.
RewriteTrace normalize(const Word& v);
/// sparsify then normalize; throws Error unless the result has digits in {-1, 0, 1}.
RewriteTrace rewrite_to_signed(const Word& v);

/// Sign-normalised neighbourhood (positions top .. i-1, v_i = 2) mapped by the table for `delta`;
/// nullopt when no row matches. Wildcard positions pass through.
std::optional<std::vector<int>> apply_case_table(long delta, const std::vector<int>& neighbourhood);

struct CaseRow {
    std::vector<std::optional<int>> input;
    std::vector<std::optional<int>> output;
};
/// Table used for a gap `delta` between consecutive 2s: 2, 3, 4, 5, or 6 for any larger gap.
const std::vector<CaseRow>& case_table(long delta);

/// Order Z[g] with g^4 = g - 1.
OrderPtr rewriting_order();
OrderElement value(const Word& v);

struct DerivedRuleReport {
    RuleName rule = RuleName::w1;
    bool vanishes = false;                         // rule polynomial is divisible by X^4 - X + 1
    std::vector<std::pair<long, long>> combination; // (shift, multiplicity) of 100-11
    bool recombines = false;
    bool ok() const { return vanishes && recombines; }
};

std::vector<DerivedRuleReport> validate_derived_rules();

/// True for the field X^4 - X + 1 given on its power basis.
bool rewriting_applies(const FieldDescriptor& f);

/// Signed word as a certificate of distinct units +-g^n over `order`'s generator.
UnitSumCertificate certificate_from_word(const Word& v, const OrderPtr& order);

}  // namespace unitsum
